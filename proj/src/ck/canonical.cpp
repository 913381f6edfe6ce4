#include "ck/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ck {

CanonicalMap CanonicalMap::decompose(const BilinearForm& F) {
  require(F.kind() != GeometryKind::Flat, Errc::BadArgument,
          "flat forms have no conic to canonicalize");
  const Mat& S = F.matrix();
  Eigen::SelfAdjointEigenSolver<Mat> es(S);
  require(es.info() == Eigen::Success, Errc::NumericalFailure,
          "eigendecomposition failed");

  const int n = int(S.rows());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  // descending eigenvalues: positives first, the negative one (if any) last
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return es.eigenvalues()(i) > es.eigenvalues()(j);
  });

  CanonicalMap m;
  m.kind_ = F.kind();
  m.kappa_ = F.kappa();
  m.O_.resize(n, n);
  m.sqrt_d_.resize(n);
  for (int k = 0; k < n; ++k) {
    double ev = es.eigenvalues()(order[k]);
    require(std::abs(ev) > 0.0, Errc::DegenerateForm,
            "zero eigenvalue in a curved form");
    m.O_.col(k) = es.eigenvectors().col(order[k]);
    m.sqrt_d_(k) = std::sqrt(std::abs(ev));
  }
  m.lambda_ = es.eigenvalues()(order[n - 1]) > 0 ? 1.0 : -1.0;
  return m;
}

Vec CanonicalMap::apply(const Vec& x) const {
  const int n = int(O_.rows());
  require(x.size() == n - 1, Errc::DimensionMismatch,
          "point dimension does not match the form");
  Vec t = sqrt_d_.asDiagonal() * (O_.transpose() * lift(x));
  const double w = t(n - 1);
  require(std::abs(w) > 1e-300, Errc::NumericalFailure,
          "point maps to the hyperplane at infinity");
  return t.head(n - 1) / w;
}

double CanonicalMap::orientation(const Vec& x) const {
  const int n = int(O_.rows());
  require(x.size() == n - 1, Errc::DimensionMismatch,
          "point dimension does not match the form");
  Vec t = sqrt_d_.asDiagonal() * (O_.transpose() * lift(x));
  return t(n - 1) >= 0 ? 1.0 : -1.0;
}

BilinearForm CanonicalMap::canonical_form() const {
  const int n = int(O_.rows());
  Vec diag = Vec::Ones(n);
  diag(n - 1) = lambda_;
  return BilinearForm::curved(Mat(diag.asDiagonal()), kind_, kappa_);
}

}  // namespace ck
