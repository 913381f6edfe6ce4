#include "ck/geom2d.hpp"

#include <algorithm>
#include <cmath>

namespace ck {

Hyperplane Hyperplane::normalized() const {
  const double len = normal.norm();
  require(len > 1e-12, Errc::CoincidentSites, "degenerate hyperplane");
  return Hyperplane{normal / len, offset / len};
}

Hyperplane bisector(const BilinearForm& F, const Vec& p, const Vec& q) {
  require(p.size() == F.dim() && q.size() == F.dim(), Errc::DimensionMismatch,
          "site dimension does not match the form");
  Hyperplane h;
  if (F.kind() == GeometryKind::Flat) {
    const Mat Q = F.sigma_block();
    h.normal = Q * (q - p);
    h.offset = (p.dot(Q * p) - q.dot(Q * q)) / 2.0;
  } else {
    if (F.kind() == GeometryKind::Hyperbolic) {
      require(F.domain_contains(p) && F.domain_contains(q),
              Errc::OutOfDomainSite, "bisector sites must lie in the domain");
    }
    const Mat Sg = F.sigma_block();
    const Vec a = F.a_block();
    const double b = F.b_block();
    const double sp = std::sqrt(std::abs(F.bilinear(p, p)));
    const double sq = std::sqrt(std::abs(F.bilinear(q, q)));
    h.normal = sp * (Sg * q) - sq * (Sg * p) + (sp - sq) * a;
    h.offset = sp * (a.dot(q) + b) - sq * (a.dot(p) + b);
  }
  require(h.normal.norm() > 1e-12, Errc::CoincidentSites,
          "sites coincide or are equidistant everywhere");
  return h.normalized();
}

PowerBall to_power_ball(const BilinearForm& F, const Vec& site) {
  require(site.size() == F.dim(), Errc::DimensionMismatch,
          "site dimension does not match the form");
  PowerBall ball;
  if (F.kind() == GeometryKind::Flat) {
    const Mat Q = F.sigma_block();
    ball.center = Q * site;
    ball.r2 = ball.center.squaredNorm() - site.dot(ball.center);
    return ball;
  }
  if (F.kind() == GeometryKind::Hyperbolic) {
    require(F.domain_contains(site), Errc::OutOfDomainSite,
            "site lies outside the hyperbolic domain");
  }
  const double spp = F.bilinear(site, site);
  const double s = std::sqrt(std::abs(spp));
  require(s > 1e-12, Errc::OutOfDomainSite, "site lies on the fundamental conic");
  const Vec g = F.sigma_block() * site + F.a_block();
  ball.center = g / (2.0 * s);
  ball.r2 = g.squaredNorm() / (4.0 * std::abs(spp)) +
            (F.a_block().dot(site) + F.b_block()) / s;
  return ball;
}

Hyperplane radical_halfplane(const PowerBall& a, const PowerBall& b) {
  Hyperplane h;
  h.normal = 2.0 * (b.center - a.center);
  h.offset = a.center.squaredNorm() - a.r2 - b.center.squaredNorm() + b.r2;
  return h;
}

bool ConvexPolygon::contains(const Vec& x, double tol) const {
  if (empty()) return false;
  for (size_t i = 0; i < pts.size(); ++i) {
    const Vec& A = pts[i];
    const Vec& B = pts[(i + 1) % pts.size()];
    const double cross =
        (B(0) - A(0)) * (x(1) - A(1)) - (B(1) - A(1)) * (x(0) - A(0));
    if (cross < -tol * (B - A).norm()) return false;
  }
  return true;
}

double ConvexPolygon::area() const {
  if (empty()) return 0.0;
  double twice = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    const Vec& A = pts[i];
    const Vec& B = pts[(i + 1) % pts.size()];
    twice += A(0) * B(1) - B(0) * A(1);
  }
  return twice / 2.0;
}

ConvexPolygon clip(const ConvexPolygon& poly, const Hyperplane& h) {
  ConvexPolygon out;
  const size_t n = poly.pts.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec& A = poly.pts[i];
    const Vec& B = poly.pts[(i + 1) % n];
    const double da = h.side(A);
    const double db = h.side(B);
    if (da <= 0.0) out.pts.push_back(A);
    if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
      const double t = da / (da - db);
      out.pts.push_back(A + t * (B - A));
    }
  }
  return out;
}

ConvexPolygon domain_polygon(const BilinearForm& F, const Mat& sites,
                             int segments) {
  require(F.dim() == 2, Errc::BadArgument, "diagrams are two-dimensional");
  require(segments >= 3, Errc::BadArgument, "need at least three segments");
  ConvexPolygon poly;
  if (F.kind() == GeometryKind::Hyperbolic) {
    const Mat Sg = F.sigma_block();
    Eigen::LLT<Mat> llt(Sg);
    require(llt.info() == Eigen::Success, Errc::DegenerateShape,
            "hyperbolic domain is not an ellipse");
    const Vec a = F.a_block();
    const Vec mu = -llt.solve(a);
    const double rho2 = a.dot(llt.solve(a)) - F.b_block();
    require(rho2 > 0.0, Errc::DegenerateShape, "hyperbolic domain is empty");
    const Mat half = inverse_sqrt_spd(Sg);
    const double rho = std::sqrt(rho2);
    poly.pts.reserve(size_t(segments));
    for (int i = 0; i < segments; ++i) {
      const double th = 2.0 * M_PI * double(i) / double(segments);
      Vec dir(2);
      dir << std::cos(th), std::sin(th);
      poly.pts.push_back(mu + rho * (half * dir));
    }
    return poly;
  }
  require(sites.rows() > 0 && sites.cols() == 2, Errc::BadArgument,
          "need sites to frame the drawing region");
  Vec lo = sites.colwise().minCoeff();
  Vec hi = sites.colwise().maxCoeff();
  const double pad = 0.25 * std::max(hi(0) - lo(0), hi(1) - lo(1)) + 1.0;
  lo.array() -= pad;
  hi.array() += pad;
  Vec v0(2), v1(2), v2(2), v3(2);
  v0 << lo(0), lo(1);
  v1 << hi(0), lo(1);
  v2 << hi(0), hi(1);
  v3 << lo(0), hi(1);
  poly.pts = {v0, v1, v2, v3};
  return poly;
}

}  // namespace ck
