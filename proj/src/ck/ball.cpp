#include "ck/ball.hpp"

#include <cmath>

namespace ck {

QuadricBall ball_to_quadric(const BilinearForm& F, const MetricBall& ball) {
  require(F.kind() != GeometryKind::Flat, Errc::BadArgument,
          "conversion applies to curved forms");
  require(ball.center.size() == F.dim(), Errc::DimensionMismatch,
          "ball center dimension does not match the form");
  require(ball.radius > 0.0, Errc::NonpositiveRadius,
          "ball radius must be positive");
  const double khat = std::abs(F.kappa());
  const Mat Sg = F.sigma_block();
  const Vec a = F.a_block();
  const double b = F.b_block();
  const Vec ap = Sg * ball.center + a;          // S(center, x) = ap.x + bp
  const double bp = a.dot(ball.center) + b;
  const double scc = F.bilinear(ball.center, ball.center);

  QuadricBall out;
  Vec rhs;
  double cterm;
  if (F.kind() == GeometryKind::Hyperbolic) {
    require(F.domain_contains(ball.center), Errc::OutOfDomainSite,
            "ball center lies outside the hyperbolic domain");
    const double ch = std::cosh(khat * ball.radius);
    const double rt2 = scc * ch * ch;  // negative
    out.shape = ap * ap.transpose() - rt2 * Sg;
    rhs = rt2 * a - bp * ap;
    cterm = rt2 * b - bp * bp;
  } else {
    require(ball.radius < M_PI / (2.0 * khat), Errc::BadArgument,
            "elliptic ball radius must stay below the quarter turn");
    const double co = std::cos(khat * ball.radius);
    const double rt2 = scc * co * co;  // positive
    out.shape = rt2 * Sg - ap * ap.transpose();
    rhs = bp * ap - rt2 * a;
    cterm = bp * bp - rt2 * b;
  }

  Eigen::SelfAdjointEigenSolver<Mat> es(out.shape);
  require(es.info() == Eigen::Success, Errc::NumericalFailure,
          "shape eigendecomposition failed");
  for (int i = 0; i < out.shape.rows(); ++i) {
    require(std::abs(es.eigenvalues()(i)) > 1e-12, Errc::DegenerateShape,
            "ball shape is degenerate");
  }
  out.center = out.shape.ldlt().solve(rhs);
  out.r2 = cterm + out.center.dot(out.shape * out.center);
  return out;
}

FactoredSphere quadric_to_sphere(const QuadricBall& q) {
  require(q.shape.rows() == q.shape.cols() &&
              q.shape.rows() == q.center.size(),
          Errc::DimensionMismatch, "inconsistent quadric dimensions");
  require(q.r2 > 0.0, Errc::NonpositiveRadius,
          "quadric does not bound a ball");
  FactoredSphere s;
  s.L = lower_factor_ltl(q.shape);  // rejects indefinite shapes
  s.center = q.center;
  s.radius = std::sqrt(q.r2);
  return s;
}

}  // namespace ck
