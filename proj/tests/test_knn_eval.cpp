#include <doctest.h>

#include <cmath>

#include "ck/eval.hpp"
#include "ck/knn.hpp"
#include "ck/rng.hpp"
#include "test_helpers.hpp"

using namespace ck;

namespace {

const DistanceFn euclid = [](const Vec& p, const Vec& q) {
  return (p - q).norm();
};

LabeledDataset two_blobs(Rng& rng, int per_class, double sep) {
  LabeledDataset ds;
  ds.X.resize(2 * per_class, 2);
  for (int c = 0; c < 2; ++c) {
    for (int i = 0; i < per_class; ++i) {
      const int row = c * per_class + i;
      ds.X(row, 0) = c * sep + 0.4 * rng.gauss();
      ds.X(row, 1) = 0.4 * rng.gauss();
      ds.labels.push_back(c);
    }
    ds.label_names.push_back(c == 0 ? "lo" : "hi");
  }
  return ds;
}

}  // namespace

TEST_CASE("vote ties resolve by summed distance then label id") {
  Mat pool(4, 1);
  pool << 1, 2, 3, 4;
  std::vector<int> labels{0, 1, 0, 1};
  Vec q(1);
  q << 0;
  // counts tie 2-2, sums 1+3 vs 2+4
  CHECK(knn_classify(pool, labels, q, 4, euclid) == 0);
  // counts tie 1-1, nearer single neighbor wins
  CHECK(knn_classify(pool, labels, q, 2, euclid) == 0);

  Mat sym(2, 1);
  sym << -1, 1;
  std::vector<int> sym_labels{1, 0};
  // full tie on count and distance: smaller label id
  CHECK(knn_classify(sym, sym_labels, q, 2, euclid) == 0);

  Mat dup(2, 1);
  dup << 5, 5;
  std::vector<int> dup_labels{1, 0};
  // identical coordinates: the lower index casts the only vote
  CHECK(knn_classify(dup, dup_labels, q, 1, euclid) == 1);
}

TEST_CASE("knn argument validation") {
  Mat pool(3, 1);
  pool << 1, 2, 3;
  std::vector<int> labels{0, 1, 0};
  Vec q(1);
  q << 0;
  CHECK_THROWS_AS(knn_classify(pool, labels, q, 0, euclid), Error);
  CHECK_THROWS_AS(knn_classify(pool, labels, q, 4, euclid), Error);
  CHECK_THROWS_AS(
      knn_classify_indexed(pool, labels, {}, q, 1, euclid), Error);
}

TEST_CASE("domain violations propagate out of classification") {
  Mat pool(2, 1);
  pool << 1, 2;
  std::vector<int> labels{0, 1};
  Vec q(1);
  q << 9;
  auto partial = [](const Vec& p, const Vec&) -> double {
    if (p(0) > 5) throw Error(Errc::DomainViolation, "outside");
    return 0.0;
  };
  CHECK_THROWS_AS(knn_classify(pool, labels, q, 1, partial), Error);
}

TEST_CASE("protocol strings parse and print") {
  EvalProtocol p = EvalProtocol::parse("loo");
  CHECK(p.kind == EvalProtocol::Kind::LeaveOneOut);
  CHECK(p.name() == "loo");
  p = EvalProtocol::parse("split:250:10");
  CHECK(p.kind == EvalProtocol::Kind::RandomSplit);
  CHECK(p.train_size == 250);
  CHECK(p.repeats == 10);
  CHECK(p.name() == "split:250:10");
  CHECK_THROWS_AS(EvalProtocol::parse("bogus"), Error);
  CHECK_THROWS_AS(EvalProtocol::parse("split:10"), Error);
  CHECK_THROWS_AS(EvalProtocol::parse("split:x:2"), Error);
  CHECK_THROWS_AS(EvalProtocol::parse("split:0:2"), Error);
}

TEST_CASE("leave-one-out separates well-spaced blobs") {
  Rng rng(51);
  LabeledDataset ds = two_blobs(rng, 12, 6.0);
  LmnnConfig cfg;
  cfg.k_targets = 2;
  cfg.max_iters = 20;
  AccuracyReport rep =
      evaluate(ds, GeometryKind::Flat, cfg, EvalProtocol::leave_one_out(), 3);
  CHECK(rep.protocol == "loo");
  CHECK(rep.geometry == std::string("flat"));
  CHECK(rep.per_repeat.size() == 1);
  CHECK(rep.mean_accuracy == doctest::Approx(1.0));
  CHECK(rep.out_of_domain == 0);
}

TEST_CASE("random splits are deterministic in the seed") {
  Rng rng(53);
  LabeledDataset ds = two_blobs(rng, 14, 3.0);
  LmnnConfig cfg;
  cfg.k_targets = 2;
  cfg.max_iters = 15;
  cfg.seed = 77;
  EvalProtocol proto = EvalProtocol::random_split(20, 4);
  AccuracyReport a = evaluate(ds, GeometryKind::Elliptic, cfg, proto, 3);
  AccuracyReport b = evaluate(ds, GeometryKind::Elliptic, cfg, proto, 3);
  CHECK(a.per_repeat.size() == 4);
  CHECK(a.per_repeat == b.per_repeat);
  CHECK(a.mean_accuracy == b.mean_accuracy);
  for (double acc : a.per_repeat) {
    CHECK(acc >= 0.0);
    CHECK(acc <= 1.0);
  }
}

TEST_CASE("infeasible protocols are reported") {
  Rng rng(59);
  LabeledDataset ds = two_blobs(rng, 6, 3.0);
  LmnnConfig cfg;
  try {
    evaluate(ds, GeometryKind::Flat, cfg, EvalProtocol::random_split(12, 1), 1);
    FAIL("expected infeasible split");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ProtocolInfeasible);
  }
  try {
    // a single training point cannot cover two classes
    evaluate(ds, GeometryKind::Flat, cfg, EvalProtocol::random_split(1, 1), 1);
    FAIL("expected missing-class split");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ProtocolInfeasible);
  }
  try {
    evaluate(ds, GeometryKind::Flat, cfg, EvalProtocol::leave_one_out(), 12);
    FAIL("expected oversized k");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ProtocolInfeasible);
  }
}

TEST_CASE("mixed evaluation scores against the component training pool") {
  Rng rng(61);
  LabeledDataset ds = two_blobs(rng, 20, 5.0);
  LmnnConfig cfg;
  cfg.k_targets = 2;
  cfg.kappa_init = 1.5;
  cfg.max_iters = 15;
  cfg.seed = 9;
  AccuracyReport rep = evaluate_mixed(ds, cfg, {0.0, 0.5, 1.0},
                                      EvalProtocol::random_split(30, 2), 3);
  CHECK(rep.geometry == "mixed");
  CHECK(rep.per_repeat.size() == 2);
  for (double acc : rep.per_repeat) {
    CHECK(acc >= 0.0);
    CHECK(acc <= 1.0);
  }
  AccuracyReport again = evaluate_mixed(ds, cfg, {0.0, 0.5, 1.0},
                                        EvalProtocol::random_split(30, 2), 3);
  CHECK(again.per_repeat == rep.per_repeat);
}
