#pragma once

#include <vector>

#include "ck/bilinear_form.hpp"

namespace ck {

// {x : normal . x + offset = 0}; the kept side of a clip is side(x) <= 0.
struct Hyperplane {
  Vec normal;
  double offset = 0.0;
  double side(const Vec& x) const { return normal.dot(x) + offset; }
  Hyperplane normalized() const;
};

// Locus of points at equal distance from p and q under F, as a hyperplane
// in the affine chart.
Hyperplane bisector(const BilinearForm& F, const Vec& p, const Vec& q);

// Euclidean ball whose power function orders points exactly like the
// distance to the generating site; r2 may be negative.
struct PowerBall {
  Vec center;
  double r2 = 0.0;
  double power(const Vec& x) const {
    return (x - center).squaredNorm() - r2;
  }
};

PowerBall to_power_ball(const BilinearForm& F, const Vec& site);

// Half-plane where power(a) <= power(b); the shared |x|^2 term cancels, so
// this is affine.
Hyperplane radical_halfplane(const PowerBall& a, const PowerBall& b);

struct ConvexPolygon {
  std::vector<Vec> pts;  // counterclockwise
  bool empty() const { return pts.size() < 3; }
  bool contains(const Vec& x, double tol = 1e-9) const;
  double area() const;
};

ConvexPolygon clip(const ConvexPolygon& poly, const Hyperplane& h);

// Region the diagram is drawn over: the fundamental conic for hyperbolic
// forms (inscribed polygon), a padded site bounding box otherwise.
ConvexPolygon domain_polygon(const BilinearForm& F, const Mat& sites,
                             int segments = 720);

}  // namespace ck
