#include "ck/bilinear_form.hpp"

#include <cmath>
#include <complex>

namespace ck {

const char* kind_name(GeometryKind k) {
  switch (k) {
    case GeometryKind::Flat: return "flat";
    case GeometryKind::Elliptic: return "elliptic";
    case GeometryKind::Hyperbolic: return "hyperbolic";
  }
  return "?";
}

GeometryKind kind_from_name(const std::string& name) {
  if (name == "flat") return GeometryKind::Flat;
  if (name == "elliptic") return GeometryKind::Elliptic;
  if (name == "hyperbolic") return GeometryKind::Hyperbolic;
  fail(Errc::SchemaError, "unknown geometry kind '" + name + "'");
}

BilinearForm BilinearForm::curved(const Mat& S, GeometryKind kind,
                                  double kappa) {
  require(kind != GeometryKind::Flat, Errc::BadArgument,
          "curved() requires an elliptic or hyperbolic kind");
  require(std::isfinite(kappa) && kappa != 0.0, Errc::BadKappa,
          "curved form needs a nonzero finite kappa");
  require(S.rows() >= 2, Errc::DimensionMismatch,
          "curved form matrix must be at least 2x2");
  check_symmetric(S, "bilinear form matrix");

  BilinearForm F;
  F.kind_ = kind;
  F.kappa_ = kappa;
  F.dim_ = int(S.rows()) - 1;
  F.S_ = 0.5 * (S + S.transpose());

  Signature sig = signature(F.S_);
  const int n = F.dim_ + 1;
  if (kind == GeometryKind::Elliptic) {
    if (sig.neg == n && sig.pos == 0) {
      F.S_ = -F.S_;
      sig = sig.flipped();
    }
    require(sig.pos == n && sig.zero == 0, Errc::InvariantViolation,
            "elliptic form must be definite");
  } else {
    if (sig.neg == F.dim_ && sig.pos == 1) {
      F.S_ = -F.S_;  // put the minority sign on the negative side
      sig = sig.flipped();
    }
    require(sig.neg == 1 && sig.zero == 0 && sig.pos == F.dim_,
            Errc::InvariantViolation,
            "hyperbolic form must have signature (1 negative, d positive)");
  }
  return F;
}

BilinearForm BilinearForm::flat(const Mat& Q) {
  require(Q.rows() >= 1, Errc::DimensionMismatch, "flat form needs d >= 1");
  check_symmetric(Q, "flat form matrix");
  Eigen::LLT<Mat> llt(Q);
  require(llt.info() == Eigen::Success, Errc::NotPositiveDefinite,
          "flat form matrix must be positive definite");
  BilinearForm F;
  F.kind_ = GeometryKind::Flat;
  F.kappa_ = 0.0;
  F.dim_ = int(Q.rows());
  F.S_ = Mat::Zero(F.dim_ + 1, F.dim_ + 1);
  F.S_.topLeftCorner(F.dim_, F.dim_) = 0.5 * (Q + Q.transpose());
  return F;
}

double BilinearForm::bilinear(const Vec& p, const Vec& q) const {
  require(p.size() == dim_ && q.size() == dim_, Errc::DimensionMismatch,
          "point dimension does not match the form");
  return lift(p).dot(S_ * lift(q));
}

bool BilinearForm::domain_contains(const Vec& p) const {
  require(p.size() == dim_, Errc::DimensionMismatch,
          "point dimension does not match the form");
  if (kind_ != GeometryKind::Hyperbolic) return true;
  return bilinear(p, p) < 0.0;
}

double ck_distance(const BilinearForm& F, const Vec& p, const Vec& q) {
  if (F.kind() == GeometryKind::Flat) {
    Vec v = p - q;
    require(v.size() == F.dim(), Errc::DimensionMismatch,
            "point dimension does not match the form");
    double s = v.dot(F.sigma_block() * v);
    return std::sqrt(std::max(s, 0.0));
  }

  const double spq = F.bilinear(p, q);
  const double spp = F.bilinear(p, p);
  const double sqq = F.bilinear(q, q);
  const double scale = 1.0 / std::abs(F.kappa());

  if (F.kind() == GeometryKind::Elliptic) {
    double ratio = spq / std::sqrt(spp * sqq);
    ratio = std::clamp(ratio, -1.0, 1.0);
    return scale * std::acos(ratio);
  }

  require(spp < 0.0 && sqq < 0.0, Errc::DomainViolation,
          "point outside the hyperbolic domain");
  double ratio = std::abs(spq) / std::sqrt(spp * sqq);
  if (ratio < 1.0) {
    require(ratio >= 1.0 - 1e-9, Errc::NumericalFailure,
            "arccosh argument fell below 1");
    ratio = 1.0;
  }
  return scale * std::acosh(ratio);
}

namespace {

// |Log(cross-ratio)| for the segment p..q, principal branch.  The quadratic
// S(x(t), x(t)) = 0 along the lifted line x(t) = p~ + t(q~ - p~) locates the
// conic intersections at its roots.
double principal_log_magnitude(const BilinearForm& F, const Vec& p,
                               const Vec& q) {
  const Mat& S = F.matrix();
  Vec ph = lift(p), qh = lift(q);
  Vec v = qh - ph;
  const double a = v.dot(S * v);
  const double b = 2.0 * ph.dot(S * v);
  const double c = ph.dot(S * ph);

  const double mag = std::max({std::abs(a), std::abs(b), std::abs(c)});
  require(mag > 0.0, Errc::DegenerateLine, "conic quadratic vanished");

  using C = std::complex<double>;
  C cr;
  if (std::abs(a) <= 1e-14 * mag) {
    require(std::abs(b) > 1e-14 * mag, Errc::DegenerateLine,
            "line meets the conic in no isolated points");
    // one intersection escaped to infinity; the cross-ratio degenerates
    C t1 = C(-c / b, 0.0);
    cr = t1 / (t1 - 1.0);
  } else {
    C disc = std::sqrt(C(b * b - 4.0 * a * c, 0.0));
    C t1 = (-b + disc) / (2.0 * a);
    C t2 = (-b - disc) / (2.0 * a);
    require(std::abs(t1 - t2) > 1e-14, Errc::DegenerateLine,
            "conic intersections coincide");
    // p at t=0, q at t=1, conic hits at t1, t2
    cr = (t1 * (1.0 - t2)) / (t2 * (1.0 - t1));
  }
  const double m = std::abs(std::log(cr));
  require(std::isfinite(m), Errc::NumericalFailure,
          "cross-ratio produced a non-finite logarithm");
  return m;
}

// The principal branch only resolves the elliptic angle modulo 2 pi.  The
// cross-ratio is multiplicative along the line, so summing over subsegments
// continues the logarithm past the branch cut.  A segment is trusted once its
// own value is small and splitting it changes nothing.
double continued_log_magnitude(const BilinearForm& F, const Vec& p,
                               const Vec& q, int depth) {
  require(depth < 60, Errc::NumericalFailure,
          "cross-ratio subdivision did not converge");
  double whole = principal_log_magnitude(F, p, q);
  Vec m = 0.5 * (p + q);
  double left = principal_log_magnitude(F, p, m);
  double right = principal_log_magnitude(F, m, q);
  if (whole <= 2.0 && std::abs(left + right - whole) <= 1e-10) return whole;
  return continued_log_magnitude(F, p, m, depth + 1) +
         continued_log_magnitude(F, m, q, depth + 1);
}

}  // namespace

double cross_ratio_distance_oracle(const BilinearForm& F, const Vec& p,
                                   const Vec& q) {
  require(F.kind() != GeometryKind::Flat, Errc::BadArgument,
          "the cross-ratio construction needs a curved form");
  require(F.domain_contains(p) && F.domain_contains(q), Errc::DomainViolation,
          "points must lie in the domain");
  return continued_log_magnitude(F, p, q, 0) / (2.0 * std::abs(F.kappa()));
}

}  // namespace ck
