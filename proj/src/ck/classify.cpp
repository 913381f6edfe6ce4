#include "ck/classify.hpp"

namespace ck {

namespace {

// order-free comparison up to a global sign flip
bool matches(const Signature& s, const Signature& want) {
  return s == want || s == want.flipped();
}

}  // namespace

GeometryClass classify_form(const Mat& A) {
  check_symmetric(A, "classified matrix");
  const int n = int(A.rows());
  GeometryClass g;
  g.primal = signature(A);
  g.dual = signature(adjugate(A));

  const int d = n - 1;
  if (g.primal.zero == 0) {
    if (g.primal.neg == 0 || g.primal.pos == 0) {
      g.label = "elliptic";
    } else if (matches(g.primal, Signature{1, 0, d})) {
      g.label = "hyperbolic";
    } else {
      g.label = "degenerate-unclassified";
    }
    return g;
  }

  if (n == 3) {
    if (matches(g.primal, Signature{0, 1, 2})) {
      g.label = "dual-euclidean";
      return g;
    }
    if (matches(g.primal, Signature{1, 1, 1})) {
      g.label = "dual-pseudo-euclidean";
      return g;
    }
  }
  g.label = "degenerate-unclassified";
  return g;
}

}  // namespace ck
