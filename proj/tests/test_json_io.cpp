#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "ck/json_io.hpp"

using namespace ck;

namespace {

std::string tmp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

MetricState sample_elliptic_state() {
  MetricState m;
  m.kind = GeometryKind::Elliptic;
  m.L = Mat::Zero(3, 3);
  m.L << 1.0, 0, 0, 0.3, 0.8, 0, -0.1, 0.2, 1.2;
  m.D = Vec(0);
  m.kappa = 0.9;
  return m;
}

MetricState sample_hyperbolic_state() {
  MetricState m;
  m.kind = GeometryKind::Hyperbolic;
  m.L = Mat::Zero(3, 3);
  m.L << 1.1, 0, 0, 0.2, 0.9, 0, 0, 0, 1.0;
  m.D = Vec(3);
  m.D << -1.0, -1.0, 2.5;
  m.kappa = -1.0 / std::sqrt(2.5);
  return m;
}

}  // namespace

TEST_CASE("form json round trip is exact") {
  Mat S = Mat::Identity(3, 3);
  S(2, 2) = -1.0;
  S(0, 1) = S(1, 0) = 0.1 + 0.2;  // not exactly representable in decimal
  BilinearForm F = BilinearForm::curved(S, GeometryKind::Hyperbolic, -1.0);
  std::string text = form_to_json(F);
  BilinearForm G = form_from_json(text);
  CHECK(G.kind() == GeometryKind::Hyperbolic);
  CHECK(G.kappa() == -1.0);
  CHECK(G.dim() == 2);
  CHECK(G.matrix() == F.matrix());
  CHECK(form_to_json(G) == text);

  Mat Q(1, 1);
  Q << 0.1 + 0.2;
  BilinearForm flat = BilinearForm::flat(Q);
  BilinearForm flat2 = form_from_json(form_to_json(flat));
  CHECK(flat2.sigma_block()(0, 0) == Q(0, 0));
  CHECK(flat2.kappa() == 0.0);
}

TEST_CASE("metric save then load then save is byte identical") {
  Standardizer z;
  z.mean = Vec(2);
  z.mean << 0.25, -1.5;
  z.stddev = Vec(2);
  z.stddev << 1.0, 3.0;

  int idx = 0;
  for (const MetricState& m :
       {sample_elliptic_state(), sample_hyperbolic_state()}) {
    const std::string p1 = tmp_path(idx == 0 ? "ck_m1a.json" : "ck_m2a.json");
    const std::string p2 = tmp_path(idx == 0 ? "ck_m1b.json" : "ck_m2b.json");
    ++idx;
    save_metric(p1, m, z);
    LoadedMetric lm = load_metric(p1);
    CHECK(!lm.is_mixed);
    REQUIRE(lm.state.has_value());
    CHECK(lm.state->kind == m.kind);
    CHECK(lm.state->L == m.L);
    CHECK(lm.state->D == m.D);
    CHECK(lm.state->kappa == m.kappa);
    REQUIRE(lm.standardizer.has_value());
    CHECK(lm.standardizer->mean == z.mean);
    CHECK(lm.standardizer->stddev == z.stddev);
    save_metric(p2, *lm.state, lm.standardizer);
    CHECK(read_text_file(p1) == read_text_file(p2));
  }

  MetricState flat;
  flat.kind = GeometryKind::Flat;
  flat.L = Mat::Zero(2, 2);
  flat.L << 1.25, 0, -0.5, 0.75;
  flat.D = Vec(0);
  flat.kappa = 0.0;
  const std::string p = tmp_path("ck_mf.json");
  save_metric(p, flat);
  LoadedMetric lm = load_metric(p);
  REQUIRE(lm.state.has_value());
  CHECK(lm.state->L == flat.L);
  CHECK(!lm.standardizer.has_value());
  CHECK(lm.form.kind() == GeometryKind::Flat);
  CHECK(lm.form.sigma_block() == (flat.L.transpose() * flat.L).eval());
}

TEST_CASE("mixed metric round trips and blends distances") {
  Mat S = Mat::Identity(3, 3);
  S(2, 2) = -1.0;
  MixedMetric mm = make_mixed(
      BilinearForm::curved(Mat::Identity(3, 3), GeometryKind::Elliptic, 1.0),
      BilinearForm::curved(S, GeometryKind::Hyperbolic, -1.0), 0.25);
  std::string text = metric_to_json(mm);
  LoadedMetric lm = metric_from_json(text);
  CHECK(lm.is_mixed);
  CHECK(lm.blend.alpha == 0.25);
  CHECK(lm.blend.elliptic.matrix() == mm.elliptic.matrix());
  CHECK(lm.blend.hyperbolic.matrix() == mm.hyperbolic.matrix());
  CHECK(metric_to_json(lm.blend) == text);

  Vec p = Vec::Zero(2);
  Vec q(2);
  q << 0.5, 0.0;
  CHECK(lm.distance(p, q) ==
        doctest::Approx(0.25 * std::acos(1.0 / std::sqrt(1.25)) +
                        0.75 * std::atanh(0.5)));
}

TEST_CASE("bare form metric file evaluates distances") {
  std::string text =
      "{\"kind\": \"hyperbolic\", \"kappa\": -1, \"dim\": 2,"
      " \"S\": [1,0,0, 0,1,0, 0,0,-1]}";
  LoadedMetric lm = metric_from_json(text);
  CHECK(!lm.state.has_value());
  Vec p = Vec::Zero(2);
  Vec q(2);
  q << 0.5, 0.0;
  CHECK(lm.distance(p, q) == doctest::Approx(std::atanh(0.5)).epsilon(1e-12));
}

TEST_CASE("report serialization uses a fixed layout") {
  AccuracyReport r;
  r.protocol = "loo";
  r.geometry = "flat";
  r.k = 3;
  r.seed = 7;
  r.mean_accuracy = 0.5;
  r.per_repeat = {0.5};
  r.out_of_domain = 0;
  CHECK(report_to_json(r) ==
        "{\n"
        "  \"protocol\": \"loo\",\n"
        "  \"k\": 3,\n"
        "  \"geometry\": \"flat\",\n"
        "  \"seed\": 7,\n"
        "  \"mean\": 0.5,\n"
        "  \"per_repeat\": [0.5],\n"
        "  \"out_of_domain\": 0\n"
        "}\n");

  TrainReport tr;
  tr.initial_cost = 2.0;
  tr.final_cost = 1.5;
  tr.iterations = 3;
  tr.halvings = 1;
  tr.gamma_underflow = false;
  tr.cost_trace = {2.0, 1.75, 1.5};
  tr.gamma_trace = {0.5, 0.25, 0.25};
  CHECK(train_report_to_json(tr) ==
        "{\n"
        "  \"initial_cost\": 2,\n"
        "  \"final_cost\": 1.5,\n"
        "  \"iterations\": 3,\n"
        "  \"halvings\": 1,\n"
        "  \"gamma_underflow\": false,\n"
        "  \"cost_trace\": [2,1.75,1.5],\n"
        "  \"gamma_trace\": [0.5,0.25,0.25]\n"
        "}\n");
}

TEST_CASE("scene parsing fills defaults and validates") {
  std::string full =
      "{\"form\": {\"kind\": \"flat\", \"kappa\": 0, \"dim\": 2,"
      " \"S\": [1,0,0,1]},"
      " \"sites\": [[0,0],[1,2],[3,1]], \"labels\": [0,1,0], \"order\": 2,"
      " \"balls\": [{\"center\": [0.5,0.5], \"radius\": 0.3}]}";
  Scene s = scene_from_json(full);
  CHECK(s.form.kind() == GeometryKind::Flat);
  CHECK(s.sites.rows() == 3);
  CHECK(s.sites(1, 1) == 2.0);
  CHECK(s.labels == std::vector<int>{0, 1, 0});
  CHECK(s.order == 2);
  REQUIRE(s.balls.size() == 1);
  CHECK(s.balls[0].radius == 0.3);

  std::string minimal =
      "{\"form\": {\"kind\": \"elliptic\", \"kappa\": 1, \"dim\": 2,"
      " \"S\": [1,0,0, 0,1,0, 0,0,1]}}";
  Scene m = scene_from_json(minimal);
  CHECK(m.sites.rows() == 0);
  CHECK(m.labels.empty());
  CHECK(m.order == 1);
  CHECK(m.balls.empty());

  CHECK_THROWS_AS(scene_from_json("{}"), Error);
  std::string bad_site =
      "{\"form\": {\"kind\": \"flat\", \"kappa\": 0, \"dim\": 2,"
      " \"S\": [1,0,0,1]}, \"sites\": [[1]]}";
  CHECK_THROWS_AS(scene_from_json(bad_site), Error);
  std::string bad_labels =
      "{\"form\": {\"kind\": \"flat\", \"kappa\": 0, \"dim\": 2,"
      " \"S\": [1,0,0,1]}, \"sites\": [[1,1]], \"labels\": [1,2]}";
  CHECK_THROWS_AS(scene_from_json(bad_labels), Error);
  std::string bad_order =
      "{\"form\": {\"kind\": \"flat\", \"kappa\": 0, \"dim\": 2,"
      " \"S\": [1,0,0,1]}, \"order\": 0}";
  CHECK_THROWS_AS(scene_from_json(bad_order), Error);
}

TEST_CASE("metric loading rejects malformed input") {
  CHECK_THROWS_WITH_AS(metric_from_json("not json"), "ParseError: invalid JSON",
                       Error);
  CHECK_THROWS_AS(metric_from_json("[1,2]"), Error);
  CHECK_THROWS_AS(metric_from_json("{\"kappa\": 1}"), Error);
  // flat forms must carry kappa 0
  CHECK_THROWS_AS(metric_from_json("{\"kind\": \"flat\", \"kappa\": 1,"
                                   " \"dim\": 1, \"S\": [1]}"),
                  Error);
  // non-square matrix payload
  CHECK_THROWS_AS(metric_from_json("{\"kind\": \"flat\", \"kappa\": 0,"
                                   " \"dim\": 1, \"S\": [1,2]}"),
                  Error);
  // upper-triangular garbage in the factor
  CHECK_THROWS_WITH_AS(
      metric_from_json("{\"kind\": \"elliptic\", \"kappa\": 1, \"dim\": 1,"
                       " \"S\": [1,0,0,1], \"factor_L\": [1,0.5,0,1],"
                       " \"factor_D\": []}"),
      "SchemaError: factor_L must be lower triangular", Error);
  // nonpositive factor diagonal
  CHECK_THROWS_WITH_AS(
      metric_from_json("{\"kind\": \"elliptic\", \"kappa\": 1, \"dim\": 1,"
                       " \"S\": [1,0,0,1], \"factor_L\": [-1,0,0,1],"
                       " \"factor_D\": []}"),
      "InvariantViolation: factor_L diagonal must be positive", Error);
  // stored S disagrees with the factors
  CHECK_THROWS_WITH_AS(
      metric_from_json("{\"kind\": \"elliptic\", \"kappa\": 1, \"dim\": 1,"
                       " \"S\": [2,0,0,2], \"factor_L\": [1,0,0,1],"
                       " \"factor_D\": []}"),
      "InvariantViolation: form matrix does not match the stored factors",
      Error);
  // factor_D must be empty unless hyperbolic
  CHECK_THROWS_AS(
      metric_from_json("{\"kind\": \"elliptic\", \"kappa\": 1, \"dim\": 1,"
                       " \"S\": [1,0,0,1], \"factor_L\": [1,0,0,1],"
                       " \"factor_D\": [1,1]}"),
      Error);
  // hyperbolic factor_D needs the minority sign last
  CHECK_THROWS_WITH_AS(
      metric_from_json("{\"kind\": \"hyperbolic\", \"kappa\": -1, \"dim\": 1,"
                       " \"S\": [1,0,0,-1], \"factor_L\": [1,0,0,1],"
                       " \"factor_D\": [1,1]}"),
      "InvariantViolation: factor_D must have one minority sign in the last "
      "entry",
      Error);
  // standardizer stddev must stay positive
  CHECK_THROWS_AS(
      metric_from_json("{\"kind\": \"flat\", \"kappa\": 0, \"dim\": 1,"
                       " \"S\": [1], \"standardizer\": {\"mean\": [0],"
                       " \"stddev\": [0]}}"),
      Error);
  CHECK_THROWS_AS(load_metric(tmp_path("ck_missing_file.json")), Error);
}
