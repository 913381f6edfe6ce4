#pragma once

#include "ck/bilinear_form.hpp"

namespace ck {

// Mahalanobis-style parametrization of a curved form:
//   S = [[Sigma, -Sigma mu], [-mu^T Sigma, mu^T Sigma mu + sign(kappa)/kappa^2]]
// kappa > 0 gives an elliptic form, kappa < 0 a hyperbolic one whose domain
// is the ellipsoid (x - mu)^T Sigma (x - mu) < 1/kappa^2.
struct CurvedMahalanobisParam {
  Mat sigma;  // positive definite, d x d
  Vec mu;     // center, length d
  double kappa = 1.0;
};

BilinearForm curved_to_form(const CurvedMahalanobisParam& c);
CurvedMahalanobisParam form_to_curved(const BilinearForm& F);

}  // namespace ck
