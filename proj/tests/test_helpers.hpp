#pragma once

#include "ck/curved_param.hpp"
#include "ck/rng.hpp"

// shared generators for randomized tests
namespace testutil {

using ck::Mat;
using ck::Vec;

inline Mat random_spd(ck::Rng& rng, int d, double jitter = 0.5) {
  Mat A(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) A(i, j) = rng.gauss();
  Mat M = A.transpose() * A / d + jitter * Mat::Identity(d, d);
  return 0.5 * (M + M.transpose());
}

inline Vec random_vec(ck::Rng& rng, int d, double scale = 1.0) {
  Vec v(d);
  for (int i = 0; i < d; ++i) v(i) = scale * rng.gauss();
  return v;
}

inline ck::CurvedMahalanobisParam random_param(ck::Rng& rng, int d,
                                               bool hyperbolic) {
  ck::CurvedMahalanobisParam c;
  c.sigma = random_spd(rng, d);
  c.mu = random_vec(rng, d, 0.4);
  double mag = rng.range(0.5, 2.0);
  c.kappa = hyperbolic ? -mag : mag;
  return c;
}

// in-domain point for either kind: inside the ellipsoid
// (x-mu)^T Sigma (x-mu) < 1/kappa^2 for hyperbolic, anywhere otherwise
inline Vec random_domain_point(ck::Rng& rng, const ck::BilinearForm& F,
                               const ck::CurvedMahalanobisParam& c,
                               double fill = 0.8) {
  const int d = int(c.mu.size());
  if (F.kind() != ck::GeometryKind::Hyperbolic) {
    return c.mu + random_vec(rng, d, 0.8 / std::abs(c.kappa));
  }
  for (;;) {
    Vec u = random_vec(rng, d);
    double m = std::sqrt(u.dot(c.sigma * u));
    double r = fill * std::pow(rng.real(), 1.0 / d) / std::abs(c.kappa);
    Vec x = c.mu + u * (r / m);
    if (F.domain_contains(x)) return x;
  }
}

}  // namespace testutil
