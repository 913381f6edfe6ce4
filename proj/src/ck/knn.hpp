#pragma once

#include <functional>
#include <vector>

#include "ck/linalg.hpp"

namespace ck {

using DistanceFn = std::function<double(const Vec&, const Vec&)>;

// Majority vote among the k nearest pool points. Vote ties go to the label
// with the smaller summed distance, then to the smaller label id. Distance
// ties between pool points are broken by index.
int knn_classify(const Mat& pool, const std::vector<int>& labels,
                 const Vec& query, int k, const DistanceFn& dist);

// Same, but restricted to the given pool row indices.
int knn_classify_indexed(const Mat& pool, const std::vector<int>& labels,
                         const std::vector<size_t>& candidates,
                         const Vec& query, int k, const DistanceFn& dist);

}  // namespace ck
