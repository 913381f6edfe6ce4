#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ck/linalg.hpp"

namespace ck {

// Per-feature z-scoring transform recorded at load time so later queries can
// be mapped into the same coordinates.
struct Standardizer {
  Vec mean;
  Vec stddev;  // constant features keep stddev 1

  Vec apply(const Vec& x) const {
    require(x.size() == mean.size(), Errc::DimensionMismatch,
            "standardizer dimension mismatch");
    return (x - mean).cwiseQuotient(stddev);
  }
};

struct LabeledDataset {
  Mat X;                                // n x d, row per sample
  std::vector<int> labels;              // 0-based class ids
  std::vector<std::string> label_names; // id -> original label text
  std::optional<Standardizer> standardizer;

  int n() const { return int(X.rows()); }
  int dim() const { return int(X.cols()); }
  int n_classes() const { return int(label_names.size()); }
  Vec point(int i) const { return X.row(i).transpose(); }

  LabeledDataset subset(const std::vector<size_t>& idx) const;
  std::vector<int> class_counts() const;
};

struct DatasetSchema {
  std::string label_column = "last";  // "first", "last", index, or header name
  char delimiter = ',';
  bool has_header = true;
  bool standardize = true;
};

LabeledDataset load_dataset(const std::string& path, const DatasetSchema& s);
LabeledDataset parse_dataset(const std::string& text, const DatasetSchema& s,
                             const std::string& origin = "<memory>");

}  // namespace ck
