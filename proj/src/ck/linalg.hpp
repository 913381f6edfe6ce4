#pragma once

#include <Eigen/Dense>

#include "ck/errors.hpp"

namespace ck {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// homogeneous lift (x, 1)
inline Vec lift(const Vec& x) {
  Vec h(x.size() + 1);
  h.head(x.size()) = x;
  h(x.size()) = 1.0;
  return h;
}

// Inertia of a symmetric matrix: counts of (negative, zero, positive)
// eigenvalues.  Eigenvalues with |lambda| <= rel_tol * max|lambda| count as
// zero.
struct Signature {
  int neg = 0;
  int zero = 0;
  int pos = 0;
  bool operator==(const Signature&) const = default;
  Signature flipped() const { return {pos, zero, neg}; }
};

Signature signature(const Mat& A, double rel_tol = 1e-10);

// Adjugate (transposed cofactor matrix); adj(A) * A = det(A) * I.
Mat adjugate(const Mat& A);

// Lower-triangular L with positive diagonal satisfying L^T L = M.
// This is the reversed-pivot variant of the Cholesky factorization.
Mat lower_factor_ltl(const Mat& M);

// Symmetric positive-definite inverse square root.
Mat inverse_sqrt_spd(const Mat& A);

void check_symmetric(const Mat& A, const char* what);

}  // namespace ck
