#include "ck/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ck {

LabeledDataset LabeledDataset::subset(const std::vector<size_t>& idx) const {
  LabeledDataset out;
  out.X.resize(long(idx.size()), X.cols());
  out.labels.reserve(idx.size());
  for (size_t r = 0; r < idx.size(); ++r) {
    require(idx[r] < size_t(n()), Errc::BadArgument, "subset index out of range");
    out.X.row(long(r)) = X.row(long(idx[r]));
    out.labels.push_back(labels[idx[r]]);
  }
  out.label_names = label_names;
  out.standardizer = standardizer;
  return out;
}

std::vector<int> LabeledDataset::class_counts() const {
  std::vector<int> counts(label_names.size(), 0);
  for (int y : labels) ++counts[size_t(y)];
  return counts;
}

namespace {

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == delim) {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  cells.push_back(cur);
  for (auto& c : cells) {
    while (!c.empty() && (c.front() == ' ' || c.front() == '\t')) c.erase(0, 1);
    while (!c.empty() &&
           (c.back() == ' ' || c.back() == '\t' || c.back() == '\r'))
      c.pop_back();
  }
  return cells;
}

double parse_number(const std::string& cell, size_t row, size_t col) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size() ||
      !std::isfinite(v)) {
    fail(Errc::ParseError, "row " + std::to_string(row) + ", column " +
                               std::to_string(col) + ": '" + cell +
                               "' is not a finite number");
  }
  return v;
}

}  // namespace

LabeledDataset parse_dataset(const std::string& text, const DatasetSchema& s,
                             const std::string& origin) {
  std::vector<std::vector<std::string>> rows;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line == "\r") continue;
      rows.push_back(split_line(line, s.delimiter));
    }
  }
  require(!rows.empty(), Errc::EmptyDataset, origin + " has no rows");

  const size_t width = rows[0].size();
  for (size_t r = 0; r < rows.size(); ++r) {
    require(rows[r].size() == width, Errc::RaggedRows,
            origin + ": row " + std::to_string(r + 1) + " has " +
                std::to_string(rows[r].size()) + " cells, expected " +
                std::to_string(width));
  }
  require(width >= 2, Errc::SchemaError,
          origin + " needs at least one feature column plus the label");

  size_t label_col = width;  // resolved below
  std::vector<std::string> header;
  if (s.has_header) {
    header = rows.front();
    rows.erase(rows.begin());
    require(!rows.empty(), Errc::EmptyDataset, origin + " has only a header");
  }

  if (s.label_column == "first") {
    label_col = 0;
  } else if (s.label_column == "last") {
    label_col = width - 1;
  } else {
    int idx = -1;
    auto [ptr, ec] = std::from_chars(
        s.label_column.data(), s.label_column.data() + s.label_column.size(),
        idx);
    if (ec == std::errc() && ptr == s.label_column.data() + s.label_column.size()) {
      require(idx >= 0 && size_t(idx) < width, Errc::SchemaError,
              "label column index " + s.label_column + " out of range");
      label_col = size_t(idx);
    } else {
      for (size_t c = 0; c < header.size(); ++c) {
        if (header[c] == s.label_column) label_col = c;
      }
      require(label_col < width, Errc::SchemaError,
              "label column '" + s.label_column + "' not found in header");
    }
  }

  const size_t n = rows.size();
  require(n >= 2, Errc::EmptyDataset,
          origin + " has fewer than two data rows");
  const size_t d = width - 1;

  LabeledDataset ds;
  ds.X.resize(long(n), long(d));
  ds.labels.reserve(n);
  for (size_t r = 0; r < n; ++r) {
    size_t out_c = 0;
    for (size_t c = 0; c < width; ++c) {
      if (c == label_col) continue;
      ds.X(long(r), long(out_c)) = parse_number(rows[r][c], r + 1, c + 1);
      ++out_c;
    }
    const std::string& tag = rows[r][label_col];
    require(!tag.empty(), Errc::ParseError,
            "row " + std::to_string(r + 1) + ": empty label");
    int id = -1;
    for (size_t k = 0; k < ds.label_names.size(); ++k) {
      if (ds.label_names[k] == tag) id = int(k);
    }
    if (id < 0) {
      id = int(ds.label_names.size());
      ds.label_names.push_back(tag);
    }
    ds.labels.push_back(id);
  }

  if (s.standardize) {
    Standardizer z;
    z.mean = ds.X.colwise().mean().transpose();
    z.stddev.resize(long(d));
    for (size_t c = 0; c < d; ++c) {
      double var =
          (ds.X.col(long(c)).array() - z.mean(long(c))).square().sum() /
          double(n);
      double sd = std::sqrt(var);
      z.stddev(long(c)) = sd > 1e-12 ? sd : 1.0;
    }
    for (long r = 0; r < ds.X.rows(); ++r)
      ds.X.row(r) = z.apply(ds.X.row(r).transpose()).transpose();
    ds.standardizer = z;
  }
  return ds;
}

LabeledDataset load_dataset(const std::string& path, const DatasetSchema& s) {
  std::ifstream in(path, std::ios::binary);
  require(bool(in), Errc::ParseError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str(), s, path);
}

}  // namespace ck
