#include "ck/linalg.hpp"

#include <cmath>

namespace ck {

Signature signature(const Mat& A, double rel_tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(A, Eigen::EigenvaluesOnly);
  require(es.info() == Eigen::Success, Errc::NumericalFailure,
          "eigenvalue computation failed");
  const Vec& ev = es.eigenvalues();
  double scale = 0.0;
  for (int i = 0; i < ev.size(); ++i) scale = std::max(scale, std::abs(ev(i)));
  double tol = rel_tol * scale;
  Signature s;
  for (int i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) <= tol)
      ++s.zero;
    else if (ev(i) < 0)
      ++s.neg;
    else
      ++s.pos;
  }
  return s;
}

Mat adjugate(const Mat& A) {
  const int n = int(A.rows());
  require(A.cols() == n, Errc::DimensionMismatch, "adjugate needs square input");
  Mat adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1.0;
    return adj;
  }
  Mat minor(n - 1, n - 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int r = 0;
      for (int ii = 0; ii < n; ++ii) {
        if (ii == i) continue;
        int c = 0;
        for (int jj = 0; jj < n; ++jj) {
          if (jj == j) continue;
          minor(r, c) = A(ii, jj);
          ++c;
        }
        ++r;
      }
      double cof = minor.determinant();
      if ((i + j) % 2 != 0) cof = -cof;
      adj(j, i) = cof;  // transpose of the cofactor matrix
    }
  }
  return adj;
}

Mat lower_factor_ltl(const Mat& M) {
  const int n = int(M.rows());
  require(M.cols() == n, Errc::DimensionMismatch, "factorization needs square input");
  // Reverse rows and columns, take the ordinary lower Cholesky factor G of
  // the reversed matrix, reverse G back; the transpose is lower-triangular
  // with L^T L = M.
  Mat R = M.reverse();
  Eigen::LLT<Mat> llt(R);
  require(llt.info() == Eigen::Success, Errc::NotPositiveDefinite,
          "matrix is not positive definite");
  Mat B = Mat(llt.matrixL()).reverse();  // upper triangular, M = B B^T
  Mat L = B.transpose();
  for (int i = 0; i < n; ++i) {
    if (L(i, i) < 0) L.row(i) = -L.row(i);
  }
  return L;
}

Mat inverse_sqrt_spd(const Mat& A) {
  Eigen::SelfAdjointEigenSolver<Mat> es(A);
  require(es.info() == Eigen::Success, Errc::NumericalFailure,
          "eigenvalue computation failed");
  const Vec& ev = es.eigenvalues();
  require(ev.minCoeff() > 0.0, Errc::NotPositiveDefinite,
          "matrix is not positive definite");
  Vec inv_sqrt = ev.array().sqrt().inverse();
  return es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().transpose();
}

void check_symmetric(const Mat& A, const char* what) {
  require(A.rows() == A.cols(), Errc::DimensionMismatch,
          std::string(what) + " must be square");
  double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  double asym = (A - A.transpose()).cwiseAbs().maxCoeff();
  require(asym <= 1e-12 * scale, Errc::InvariantViolation,
          std::string(what) + " must be symmetric");
}

}  // namespace ck
