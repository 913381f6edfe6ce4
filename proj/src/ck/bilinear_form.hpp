#pragma once

#include <string>

#include "ck/linalg.hpp"

namespace ck {

enum class GeometryKind { Flat, Elliptic, Hyperbolic };

const char* kind_name(GeometryKind k);
GeometryKind kind_from_name(const std::string& name);

// Symmetric bilinear form defining a Cayley-Klein geometry on R^d.
//
// Curved kinds store a (d+1)x(d+1) matrix S acting on homogeneous
// coordinates (x, 1); kappa sets the distance scale (curvature 1/kappa is
// the radius of curvature, kappa < 0 for hyperbolic).  Stored matrices are
// sign-normalized: elliptic S is positive definite, hyperbolic S has
// exactly one negative eigenvalue and domain {x : S(x,x) < 0}.
//
// The flat kind stores a d x d positive-definite matrix Q in the top-left
// block (zero elsewhere) and measures sqrt((p-q)^T Q (p-q)); kappa is 0.
class BilinearForm {
 public:
  BilinearForm() = default;  // empty placeholder, fill via the factories
  static BilinearForm curved(const Mat& S, GeometryKind kind, double kappa);
  static BilinearForm flat(const Mat& Q);

  GeometryKind kind() const { return kind_; }
  double kappa() const { return kappa_; }
  int dim() const { return dim_; }
  const Mat& matrix() const { return S_; }

  // block access: S = [[Sigma, a], [a^T, b]]
  Mat sigma_block() const { return S_.topLeftCorner(dim_, dim_); }
  Vec a_block() const { return S_.topRightCorner(dim_, 1); }
  double b_block() const { return S_(dim_, dim_); }

  double bilinear(const Vec& p, const Vec& q) const;
  bool domain_contains(const Vec& p) const;

 private:
  GeometryKind kind_ = GeometryKind::Flat;
  double kappa_ = 0.0;
  int dim_ = 0;
  Mat S_;
};

double ck_distance(const BilinearForm& F, const Vec& p, const Vec& q);

// Independent check route: intersect the line through p and q with the
// fundamental conic {S(x,x) = 0} and take the logarithm of the cross-ratio
// of the four points.  Agrees with ck_distance for curved kinds.
double cross_ratio_distance_oracle(const BilinearForm& F, const Vec& p,
                                   const Vec& q);

}  // namespace ck
