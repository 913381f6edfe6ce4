#include "ck/eval.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>

#include "ck/knn.hpp"
#include "ck/rng.hpp"

namespace ck {

namespace {

uint64_t repeat_seed(uint64_t seed, int repeat) {
  return seed + 0x9E3779B97F4A7C15ULL * uint64_t(repeat + 1);
}

int parse_int_field(const std::string& text, size_t from, size_t to) {
  int value = 0;
  auto [ptr, ec] =
      std::from_chars(text.data() + from, text.data() + to, value);
  require(ec == std::errc() && ptr == text.data() + to, Errc::ParseError,
          "bad protocol field in '" + text + "'");
  return value;
}

// Sampled training indices plus complement, both ascending.
std::pair<std::vector<size_t>, std::vector<size_t>> split_indices(
    const LabeledDataset& data, int train_size, uint64_t seed) {
  const size_t n = static_cast<size_t>(data.n());
  Rng rng(seed);
  std::vector<size_t> train = rng.sample(n, static_cast<size_t>(train_size));
  std::sort(train.begin(), train.end());
  std::vector<size_t> test;
  test.reserve(n - train.size());
  size_t t = 0;
  for (size_t i = 0; i < n; ++i) {
    if (t < train.size() && train[t] == i) {
      ++t;
    } else {
      test.push_back(i);
    }
  }
  return {std::move(train), std::move(test)};
}

void require_all_classes(const LabeledDataset& full,
                         const LabeledDataset& part) {
  std::set<int> present(part.labels.begin(), part.labels.end());
  require(int(present.size()) == full.n_classes(), Errc::ProtocolInfeasible,
          "training split lacks a class");
}

struct ScoreResult {
  double accuracy = 0.0;
  int out_of_domain = 0;
};

ScoreResult score_queries(const LabeledDataset& pool,
                          const LabeledDataset& full,
                          const std::vector<size_t>& queries, int k,
                          const DistanceFn& dist) {
  size_t correct = 0;
  int rejected = 0;
  for (size_t q : queries) {
    try {
      if (knn_classify(pool.X, pool.labels, full.point(int(q)), k, dist) ==
          full.labels[q]) {
        ++correct;
      }
    } catch (const Error& e) {
      if (e.code() != Errc::DomainViolation) throw;
      ++rejected;
    }
  }
  ScoreResult r;
  r.accuracy = queries.empty() ? 0.0 : double(correct) / double(queries.size());
  r.out_of_domain = rejected;
  return r;
}

}  // namespace

EvalProtocol EvalProtocol::leave_one_out() {
  return EvalProtocol{Kind::LeaveOneOut, 0, 1};
}

EvalProtocol EvalProtocol::random_split(int train_size, int repeats) {
  require(train_size >= 1, Errc::BadArgument, "train size must be positive");
  require(repeats >= 1, Errc::BadArgument, "repeats must be positive");
  return EvalProtocol{Kind::RandomSplit, train_size, repeats};
}

EvalProtocol EvalProtocol::parse(const std::string& text) {
  if (text == "loo") return leave_one_out();
  const std::string prefix = "split:";
  require(text.rfind(prefix, 0) == 0, Errc::ParseError,
          "unknown protocol '" + text + "' (expected loo or split:SIZE:REPEATS)");
  const size_t colon = text.find(':', prefix.size());
  require(colon != std::string::npos && colon + 1 < text.size(),
          Errc::ParseError, "expected split:SIZE:REPEATS in '" + text + "'");
  const int size = parse_int_field(text, prefix.size(), colon);
  const int reps = parse_int_field(text, colon + 1, text.size());
  return random_split(size, reps);
}

std::string EvalProtocol::name() const {
  if (kind == Kind::LeaveOneOut) return "loo";
  return "split:" + std::to_string(train_size) + ":" +
         std::to_string(repeats);
}

AccuracyReport evaluate(const LabeledDataset& data, GeometryKind kind,
                        const LmnnConfig& cfg, const EvalProtocol& proto,
                        int k) {
  require(k >= 1, Errc::BadArgument, "k must be at least 1");
  const size_t n = static_cast<size_t>(data.n());
  AccuracyReport rep;
  rep.protocol = proto.name();
  rep.geometry = kind_name(kind);
  rep.k = k;
  rep.seed = cfg.seed;

  if (proto.kind == EvalProtocol::Kind::LeaveOneOut) {
    require(static_cast<size_t>(k) + 1 <= n, Errc::ProtocolInfeasible,
            "k exceeds the leave-one-out pool");
    BilinearForm form = train(data, kind, cfg).state.form();
    auto dist = [&form](const Vec& p, const Vec& q) {
      return ck_distance(form, p, q);
    };
    size_t correct = 0;
    std::vector<size_t> candidates(n - 1);
    for (size_t i = 0; i < n; ++i) {
      size_t w = 0;
      for (size_t j = 0; j < n; ++j) {
        if (j != i) candidates[w++] = j;
      }
      try {
        if (knn_classify_indexed(data.X, data.labels, candidates,
                                 data.point(int(i)), k, dist) ==
            data.labels[i]) {
          ++correct;
        }
      } catch (const Error& e) {
        if (e.code() != Errc::DomainViolation) throw;
        ++rep.out_of_domain;
      }
    }
    rep.per_repeat.push_back(double(correct) / double(n));
    rep.mean_accuracy = rep.per_repeat.back();
    return rep;
  }

  require(static_cast<size_t>(proto.train_size) < n, Errc::ProtocolInfeasible,
          "train size must leave test points");
  require(k <= proto.train_size, Errc::ProtocolInfeasible,
          "k exceeds the training pool");
  for (int r = 0; r < proto.repeats; ++r) {
    auto [train_idx, test_idx] =
        split_indices(data, proto.train_size, repeat_seed(cfg.seed, r));
    LabeledDataset part = data.subset(train_idx);
    require_all_classes(data, part);
    BilinearForm form = train(part, kind, cfg).state.form();
    auto dist = [&form](const Vec& p, const Vec& q) {
      return ck_distance(form, p, q);
    };
    ScoreResult s = score_queries(part, data, test_idx, k, dist);
    rep.per_repeat.push_back(s.accuracy);
    rep.out_of_domain += s.out_of_domain;
  }
  rep.mean_accuracy =
      std::accumulate(rep.per_repeat.begin(), rep.per_repeat.end(), 0.0) /
      double(rep.per_repeat.size());
  return rep;
}

AccuracyReport evaluate_mixed(const LabeledDataset& data,
                              const LmnnConfig& cfg,
                              const std::vector<double>& alphas,
                              const EvalProtocol& proto, int k) {
  require(k >= 1, Errc::BadArgument, "k must be at least 1");
  const size_t n = static_cast<size_t>(data.n());
  AccuracyReport rep;
  rep.protocol = proto.name();
  rep.geometry = "mixed";
  rep.k = k;
  rep.seed = cfg.seed;

  if (proto.kind == EvalProtocol::Kind::LeaveOneOut) {
    MixedTrainResult mt = train_mixed(data, cfg, alphas, k);
    LabeledDataset pool = data.subset(mt.trainpart);
    auto dist = [&mt](const Vec& p, const Vec& q) {
      return mixed_distance(mt.metric, p, q);
    };
    size_t correct = 0;
    for (size_t i = 0; i < n; ++i) {
      std::vector<size_t> candidates;
      candidates.reserve(mt.trainpart.size());
      for (size_t t = 0; t < mt.trainpart.size(); ++t) {
        if (mt.trainpart[t] != i) candidates.push_back(t);
      }
      require(static_cast<size_t>(k) <= candidates.size(),
              Errc::ProtocolInfeasible, "k exceeds the leave-one-out pool");
      try {
        if (knn_classify_indexed(pool.X, pool.labels, candidates,
                                 data.point(int(i)), k, dist) ==
            data.labels[i]) {
          ++correct;
        }
      } catch (const Error& e) {
        if (e.code() != Errc::DomainViolation) throw;
        ++rep.out_of_domain;
      }
    }
    rep.per_repeat.push_back(double(correct) / double(n));
    rep.mean_accuracy = rep.per_repeat.back();
    return rep;
  }

  require(static_cast<size_t>(proto.train_size) < n, Errc::ProtocolInfeasible,
          "train size must leave test points");
  for (int r = 0; r < proto.repeats; ++r) {
    auto [train_idx, test_idx] =
        split_indices(data, proto.train_size, repeat_seed(cfg.seed, r));
    LabeledDataset part = data.subset(train_idx);
    require_all_classes(data, part);
    MixedTrainResult mt = train_mixed(part, cfg, alphas, k);
    LabeledDataset pool = part.subset(mt.trainpart);
    auto dist = [&mt](const Vec& p, const Vec& q) {
      return mixed_distance(mt.metric, p, q);
    };
    ScoreResult s = score_queries(pool, data, test_idx, k, dist);
    rep.per_repeat.push_back(s.accuracy);
    rep.out_of_domain += s.out_of_domain;
  }
  rep.mean_accuracy =
      std::accumulate(rep.per_repeat.begin(), rep.per_repeat.end(), 0.0) /
      double(rep.per_repeat.size());
  return rep;
}

}  // namespace ck
