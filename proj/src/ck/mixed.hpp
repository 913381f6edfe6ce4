#pragma once

#include "ck/bilinear_form.hpp"

namespace ck {

// Convex blend alpha * elliptic + (1 - alpha) * hyperbolic of two curved
// distances over the same feature space.
struct MixedMetric {
  BilinearForm elliptic;
  BilinearForm hyperbolic;
  double alpha = 0.5;
};

inline MixedMetric make_mixed(BilinearForm elliptic, BilinearForm hyperbolic,
                              double alpha) {
  require(elliptic.kind() == GeometryKind::Elliptic, Errc::BadArgument,
          "first component must be elliptic");
  require(hyperbolic.kind() == GeometryKind::Hyperbolic, Errc::BadArgument,
          "second component must be hyperbolic");
  require(elliptic.dim() == hyperbolic.dim(), Errc::DimensionMismatch,
          "mixed components must share a dimension");
  require(alpha >= 0.0 && alpha <= 1.0, Errc::BadArgument,
          "alpha must lie in [0, 1]");
  return MixedMetric{std::move(elliptic), std::move(hyperbolic), alpha};
}

// The endpoints evaluate only the active component, so alpha = 1 behaves
// exactly like the pure elliptic metric even where the hyperbolic one is
// undefined.
inline double mixed_distance(const MixedMetric& m, const Vec& p, const Vec& q) {
  if (m.alpha == 1.0) return ck_distance(m.elliptic, p, q);
  if (m.alpha == 0.0) return ck_distance(m.hyperbolic, p, q);
  return m.alpha * ck_distance(m.elliptic, p, q) +
         (1.0 - m.alpha) * ck_distance(m.hyperbolic, p, q);
}

}  // namespace ck
