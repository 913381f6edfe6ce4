#pragma once

#include <string>

#include "ck/linalg.hpp"

namespace ck {

// Conic classification of a symmetric (d+1)x(d+1) matrix by the inertia of
// the matrix and of its adjugate.
struct GeometryClass {
  Signature primal;
  Signature dual;
  std::string label;  // see classify_form
};

// Labels:
//   "elliptic"               definite primal inertia
//   "hyperbolic"             primal inertia (1,0,d) up to global sign
//   "dual-euclidean"         d = 2, primal {+,+,0}
//   "dual-pseudo-euclidean"  d = 2, primal {+,-,0}
//   "degenerate-unclassified" anything else (the rank-1 primal rows of the
//                            planar taxonomy share a literal zero adjugate
//                            and cannot be told apart from raw inertia)
GeometryClass classify_form(const Mat& A);

}  // namespace ck
