#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "ck/bilinear_form.hpp"
#include "ck/dataset.hpp"
#include "ck/mixed.hpp"

namespace ck {

enum class InitStrategy { PrecisionMatrix, FlatLmnnWarmStart };

struct LmnnConfig {
  int k_targets = 3;
  double tradeoff = 0.5;     // weight of the push term
  double gamma0 = 1e-3;      // initial step size
  int max_iters = 200;
  int impostor_period = 10;  // iterations between impostor refreshes
  double kappa_init = 1.0;   // elliptic curvature; hyperbolic cone padding (> 1)
  InitStrategy init = InitStrategy::PrecisionMatrix;
  uint64_t seed = 0;

  void validate() const;
};

// Learned metric in factored coordinates.
//   flat:        M = L^T L over R^d
//   elliptic:    S = L^T L over homogeneous R^{d+1}
//   hyperbolic:  S = L^T diag(D) L with D fixed during training
// L is lower-triangular with positive diagonal; kappa carries the distance
// scale (0 for flat).
struct MetricState {
  GeometryKind kind = GeometryKind::Flat;
  Mat L;
  Vec D;  // hyperbolic only
  double kappa = 0.0;

  int dim() const;
  Mat matrix() const;
  BilinearForm form() const;
  double loss_distance(const Vec& x, const Vec& y) const;  // squared for flat
};

struct TripletSet {
  std::vector<std::pair<int, int>> targets;    // ordered (i, j)
  std::vector<std::array<int, 3>> impostors;   // (i, j, l)
};

struct TrainReport {
  std::vector<double> cost_trace;   // entry 0 is the initial cost
  std::vector<double> gamma_trace;
  int halvings = 0;
  bool gamma_underflow = false;
  double initial_cost = 0.0;
  double final_cost = 0.0;
  int iterations = 0;
};

std::vector<std::pair<int, int>> build_targets(const LabeledDataset& data,
                                               int k);
std::vector<std::array<int, 3>> find_impostors(
    const MetricState& m, const LabeledDataset& data,
    const std::vector<std::pair<int, int>>& targets);

double lmnn_cost(const MetricState& m, const LabeledDataset& data,
                 const TripletSet& t, double tradeoff);
// Gradient with respect to L, projected to the lower triangle.
Mat lmnn_gradient(const MetricState& m, const LabeledDataset& data,
                  const TripletSet& t, double tradeoff);

MetricState init_metric(const LabeledDataset& data, GeometryKind kind,
                        const LmnnConfig& cfg);

// Called after every accepted step; useful for invariant checks.
using TrainObserver =
    std::function<void(int iteration, const MetricState& state, double cost)>;

struct TrainResult {
  MetricState state;  // best-cost iterate
  TrainReport report;
};

TrainResult train(const LabeledDataset& data, GeometryKind kind,
                  const LmnnConfig& cfg, const TrainObserver& observer = {});

struct MixedTrainResult {
  MixedMetric metric;
  double alpha = 0.0;
  std::vector<double> alpha_accuracies;  // holdout accuracy per candidate
  std::vector<size_t> holdout;           // indices into the input dataset
  std::vector<size_t> trainpart;
  TrainReport elliptic_report;
  TrainReport hyperbolic_report;
};

MixedTrainResult train_mixed(const LabeledDataset& data, const LmnnConfig& cfg,
                             const std::vector<double>& alphas, int k_eval);

}  // namespace ck
