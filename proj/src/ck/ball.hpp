#pragma once

#include "ck/bilinear_form.hpp"

namespace ck {

// {x : distance(center, x) <= radius} under some curved form.
struct MetricBall {
  Vec center;
  double radius = 0.0;
};

// Euclidean-quadric picture of a ball: (x - center)^T shape (x - center) = r2
// bounds the same region.
struct QuadricBall {
  Mat shape;
  Vec center;
  double r2 = 0.0;
  double residual(const Vec& x) const {
    const Vec v = x - center;
    return v.dot(shape * v) - r2;
  }
};

// Factored form |L (x - center)| = radius with L lower-triangular.
struct FactoredSphere {
  Mat L;
  Vec center;
  double radius = 0.0;
};

QuadricBall ball_to_quadric(const BilinearForm& F, const MetricBall& ball);
FactoredSphere quadric_to_sphere(const QuadricBall& q);

}  // namespace ck
