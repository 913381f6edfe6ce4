#pragma once

#include "ck/bilinear_form.hpp"

namespace ck {

// Spectral factorization S = O D^{1/2} diag(1..1, lambda) D^{1/2} O^T with
// D = |eigenvalues| sorted so a hyperbolic form's negative one comes last.
// apply() maps points into the chart of the canonical form (identity or
// diag(1,...,1,-1)) while preserving ck_distance.
class CanonicalMap {
 public:
  static CanonicalMap decompose(const BilinearForm& F);

  Vec apply(const Vec& x) const;
  // Sign of the dehomogenizing coordinate of the mapped lift.  Elliptic
  // distances are preserved exactly between points of equal orientation;
  // between opposite orientations the chart sees the antipodal complement
  // pi/|kappa| - d.  Hyperbolic distances are preserved unconditionally.
  double orientation(const Vec& x) const;
  BilinearForm canonical_form() const;
  double lambda() const { return lambda_; }
  const Mat& rotation() const { return O_; }
  const Vec& half_powers() const { return sqrt_d_; }

 private:
  GeometryKind kind_ = GeometryKind::Elliptic;
  double kappa_ = 1.0;
  double lambda_ = 1.0;
  Mat O_;      // orthogonal, columns ordered positive block first
  Vec sqrt_d_; // sqrt of |eigenvalues| in the same order
};

}  // namespace ck
