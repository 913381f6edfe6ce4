#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ck/dataset.hpp"
#include "ck/lmnn.hpp"

namespace ck {

struct EvalProtocol {
  enum class Kind { LeaveOneOut, RandomSplit };
  Kind kind = Kind::LeaveOneOut;
  int train_size = 0;  // RandomSplit only
  int repeats = 1;

  static EvalProtocol leave_one_out();
  static EvalProtocol random_split(int train_size, int repeats);
  // "loo" or "split:SIZE:REPEATS"
  static EvalProtocol parse(const std::string& text);
  std::string name() const;
};

struct AccuracyReport {
  std::string protocol;
  std::string geometry;
  int k = 0;
  uint64_t seed = 0;
  double mean_accuracy = 0.0;
  std::vector<double> per_repeat;
  int out_of_domain = 0;  // queries rejected by the metric, scored as misses
};

// Trains under the protocol and scores k-NN accuracy with the learned
// metric. Out-of-domain test queries count as misclassified.
AccuracyReport evaluate(const LabeledDataset& data, GeometryKind kind,
                        const LmnnConfig& cfg, const EvalProtocol& proto,
                        int k);

// Blended elliptic/hyperbolic variant; alpha is chosen per repeat on an
// internal holdout, and test points are scored against the subset the
// component metrics were trained on.
AccuracyReport evaluate_mixed(const LabeledDataset& data,
                              const LmnnConfig& cfg,
                              const std::vector<double>& alphas,
                              const EvalProtocol& proto, int k);

}  // namespace ck
