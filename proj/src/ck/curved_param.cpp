#include "ck/curved_param.hpp"

#include <cmath>

namespace ck {

BilinearForm curved_to_form(const CurvedMahalanobisParam& c) {
  const int d = int(c.sigma.rows());
  require(c.mu.size() == d, Errc::DimensionMismatch,
          "mu length must match sigma");
  require(std::isfinite(c.kappa) && c.kappa != 0.0, Errc::BadKappa,
          "kappa must be nonzero and finite");
  check_symmetric(c.sigma, "sigma");
  Eigen::LLT<Mat> llt(c.sigma);
  require(llt.info() == Eigen::Success, Errc::NotPositiveDefinite,
          "sigma must be positive definite");

  const double sgn = c.kappa > 0 ? 1.0 : -1.0;
  Vec a = -c.sigma * c.mu;
  Mat S(d + 1, d + 1);
  S.topLeftCorner(d, d) = c.sigma;
  S.topRightCorner(d, 1) = a;
  S.bottomLeftCorner(1, d) = a.transpose();
  S(d, d) = c.mu.dot(c.sigma * c.mu) + sgn / (c.kappa * c.kappa);
  return BilinearForm::curved(
      S, sgn > 0 ? GeometryKind::Elliptic : GeometryKind::Hyperbolic, c.kappa);
}

CurvedMahalanobisParam form_to_curved(const BilinearForm& F) {
  require(F.kind() != GeometryKind::Flat, Errc::BadArgument,
          "flat forms carry no curvature parameters");
  const int d = F.dim();
  Mat sigma = F.sigma_block();
  Eigen::LLT<Mat> llt(sigma);
  if (llt.info() != Eigen::Success) {
    // distinguish "singular" from "indefinite" for the error report
    Eigen::FullPivLU<Mat> lu(sigma);
    require(lu.isInvertible(), Errc::SingularBlock,
            "top-left block is singular");
    fail(Errc::NotPositiveDefinite, "top-left block is not positive definite");
  }

  CurvedMahalanobisParam c;
  c.sigma = sigma;
  c.mu = -llt.solve(F.a_block());
  const double t = F.b_block() - c.mu.dot(sigma * c.mu);
  require(std::abs(t) > 1e-14 * std::max(1.0, std::abs(F.b_block())),
          Errc::InconsistentForm,
          "form has no curvature offset (b equals mu^T Sigma mu)");
  c.kappa = (t > 0 ? 1.0 : -1.0) / std::sqrt(std::abs(t));
  return c;
}

}  // namespace ck
