#include "ck/knn.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "ck/errors.hpp"

namespace ck {

int knn_classify_indexed(const Mat& pool, const std::vector<int>& labels,
                         const std::vector<size_t>& candidates,
                         const Vec& query, int k, const DistanceFn& dist) {
  require(static_cast<size_t>(pool.rows()) == labels.size(),
          Errc::DimensionMismatch, "pool rows and labels differ");
  require(k >= 1, Errc::BadArgument, "k must be at least 1");
  require(!candidates.empty(), Errc::BadArgument, "empty candidate pool");
  require(static_cast<size_t>(k) <= candidates.size(), Errc::BadArgument,
          "k exceeds pool size");

  std::vector<std::pair<double, size_t>> order;
  order.reserve(candidates.size());
  for (size_t idx : candidates) {
    require(idx < static_cast<size_t>(pool.rows()), Errc::BadArgument,
            "candidate index out of range");
    order.emplace_back(dist(query, pool.row(idx).transpose()), idx);
  }
  std::sort(order.begin(), order.end());

  struct Tally {
    int count = 0;
    double sum = 0.0;
  };
  std::map<int, Tally> votes;
  for (int t = 0; t < k; ++t) {
    Tally& v = votes[labels[order[t].second]];
    v.count += 1;
    v.sum += order[t].first;
  }

  int best_label = -1;
  Tally best;
  for (const auto& [label, tally] : votes) {
    bool wins = tally.count > best.count ||
                (tally.count == best.count && tally.sum < best.sum);
    if (best_label < 0 || wins) {
      best_label = label;
      best = tally;
    }
  }
  return best_label;
}

int knn_classify(const Mat& pool, const std::vector<int>& labels,
                 const Vec& query, int k, const DistanceFn& dist) {
  std::vector<size_t> all(static_cast<size_t>(pool.rows()));
  std::iota(all.begin(), all.end(), size_t{0});
  return knn_classify_indexed(pool, labels, all, query, k, dist);
}

}  // namespace ck
