#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "ckgeom.h"

namespace {

std::string tmp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

// two well-separated classes in the plane
std::string write_blobs_csv() {
  const std::string path = tmp_path("ck_capi_blobs.csv");
  std::ofstream out(path);
  out << "x,y,label\n";
  const double ax[] = {0.0, 0.3, -0.2, 0.1, 0.4, -0.3, 0.2, -0.1};
  const double ay[] = {0.1, -0.2, 0.3, 0.0, 0.2, -0.1, -0.3, 0.4};
  for (int i = 0; i < 8; ++i)
    out << ax[i] << "," << ay[i] << ",a\n";
  for (int i = 0; i < 8; ++i)
    out << 6.0 + ax[i] << "," << 5.0 + ay[i] << ",b\n";
  return path;
}

struct Cfg {
  ck_lmnn_config c;
  Cfg() {
    ck_lmnn_config_default(&c);
    c.max_iters = 40;
    c.kappa_init = 1.5;  // valid for both curved kinds
  }
};

}  // namespace

TEST_CASE("dataset loading and accessors") {
  const std::string csv = write_blobs_csv();
  ck_dataset* d = nullptr;
  REQUIRE(ck_dataset_load(csv.c_str(), "last", ',', 1, 1, &d) == CK_OK);
  CHECK(ck_dataset_rows(d) == 16);
  CHECK(ck_dataset_cols(d) == 2);
  CHECK(ck_dataset_classes(d) == 2);
  ck_dataset_free(d);

  ck_dataset* missing = nullptr;
  CHECK(ck_dataset_load(tmp_path("ck_no_such.csv").c_str(), "last", ',', 1, 1,
                        &missing) == CK_ERR_DATA);
  CHECK(std::string(ck_last_error()).find("cannot open") !=
        std::string::npos);
  CHECK(ck_dataset_load(nullptr, "last", ',', 1, 1, &missing) ==
        CK_ERR_USAGE);
}

TEST_CASE("config defaults") {
  ck_lmnn_config cfg;
  ck_lmnn_config_default(&cfg);
  CHECK(cfg.k_targets == 3);
  CHECK(cfg.tradeoff == 0.5);
  CHECK(cfg.max_iters == 200);
  CHECK(cfg.flat_warm_start == 0);
}

TEST_CASE("train, save, reload, measure") {
  const std::string csv = write_blobs_csv();
  ck_dataset* d = nullptr;
  REQUIRE(ck_dataset_load(csv.c_str(), "last", ',', 1, 1, &d) == CK_OK);
  Cfg cfg;

  ck_metric* m = nullptr;
  char* report = nullptr;
  REQUIRE(ck_train(d, "flat", &cfg.c, &m, &report) == CK_OK);
  CHECK(std::string(report).find("\"initial_cost\"") != std::string::npos);
  ck_string_free(report);
  CHECK(std::string(ck_metric_geometry(m)) == "flat");
  CHECK(ck_metric_dim(m) == 2);

  const std::string mpath = tmp_path("ck_capi_flat.json");
  REQUIRE(ck_metric_save(m, mpath.c_str()) == CK_OK);
  ck_metric* m2 = nullptr;
  REQUIRE(ck_metric_load(mpath.c_str(), &m2) == CK_OK);
  CHECK(std::string(ck_metric_geometry(m2)) == "flat");

  const double p[2] = {0.0, 0.0};
  const double q[2] = {6.0, 5.0};
  double d1 = 0.0, d2 = 0.0, zero = -1.0;
  REQUIRE(ck_metric_distance(m, p, q, 2, &d1) == CK_OK);
  REQUIRE(ck_metric_distance(m2, p, q, 2, &d2) == CK_OK);
  CHECK(d1 == doctest::Approx(d2).epsilon(1e-12));
  CHECK(d1 > 0.0);
  REQUIRE(ck_metric_distance(m, p, p, 2, &zero) == CK_OK);
  CHECK(zero == 0.0);
  CHECK(ck_metric_distance(m, p, q, 3, &d1) == CK_ERR_USAGE);

  ck_metric_free(m2);
  ck_metric_free(m);

  CHECK(ck_train(d, "spherical", &cfg.c, &m, nullptr) == CK_ERR_USAGE);
  CHECK(ck_train(nullptr, "flat", &cfg.c, &m, nullptr) == CK_ERR_USAGE);
  ck_dataset_free(d);
}

TEST_CASE("mixed training round trips through files") {
  const std::string csv = write_blobs_csv();
  ck_dataset* d = nullptr;
  REQUIRE(ck_dataset_load(csv.c_str(), "last", ',', 1, 1, &d) == CK_OK);
  Cfg cfg;
  ck_metric* m = nullptr;
  char* report = nullptr;
  REQUIRE(ck_train_mixed(d, &cfg.c, "0,0.5,1", 1, &m, &report) == CK_OK);
  CHECK(std::string(report).find("\"alpha_accuracies\"") !=
        std::string::npos);
  ck_string_free(report);
  CHECK(std::string(ck_metric_geometry(m)) == "mixed");

  const std::string mpath = tmp_path("ck_capi_mixed.json");
  REQUIRE(ck_metric_save(m, mpath.c_str()) == CK_OK);
  ck_metric* m2 = nullptr;
  REQUIRE(ck_metric_load(mpath.c_str(), &m2) == CK_OK);
  CHECK(std::string(ck_metric_geometry(m2)) == "mixed");
  const double p[2] = {0.0, 0.0};
  const double q[2] = {1.0, 1.0};
  double dist = 0.0;
  REQUIRE(ck_metric_distance(m2, p, q, 2, &dist) == CK_OK);
  CHECK(std::isfinite(dist));
  CHECK(dist > 0.0);
  ck_metric_free(m2);
  ck_metric_free(m);
  ck_dataset_free(d);
}

TEST_CASE("evaluation is deterministic through the c api") {
  const std::string csv = write_blobs_csv();
  ck_dataset* d = nullptr;
  REQUIRE(ck_dataset_load(csv.c_str(), "last", ',', 1, 1, &d) == CK_OK);
  Cfg cfg;
  double mean1 = -1.0, mean2 = -1.0;
  char* r1 = nullptr;
  char* r2 = nullptr;
  REQUIRE(ck_evaluate(d, "flat", &cfg.c, "loo", 3, nullptr, &mean1, &r1) ==
          CK_OK);
  REQUIRE(ck_evaluate(d, "flat", &cfg.c, "loo", 3, nullptr, &mean2, &r2) ==
          CK_OK);
  CHECK(mean1 == 1.0);
  CHECK(mean1 == mean2);
  CHECK(std::string(r1) == std::string(r2));
  CHECK(std::string(r1).find("\"protocol\": \"loo\"") != std::string::npos);
  ck_string_free(r1);
  ck_string_free(r2);

  CHECK(ck_evaluate(d, "flat", &cfg.c, "bogus", 3, nullptr, nullptr,
                    nullptr) == CK_ERR_DATA);
  ck_dataset_free(d);
}

TEST_CASE("distance against a hand-written canonical metric") {
  const std::string mpath = tmp_path("ck_capi_canon.json");
  {
    std::ofstream out(mpath);
    out << "{\"kind\": \"hyperbolic\", \"kappa\": -1, \"dim\": 2,"
           " \"S\": [1,0,0, 0,1,0, 0,0,-1]}";
  }
  ck_metric* m = nullptr;
  REQUIRE(ck_metric_load(mpath.c_str(), &m) == CK_OK);
  CHECK(std::string(ck_metric_geometry(m)) == "hyperbolic");
  const double p[2] = {0.0, 0.0};
  const double q[2] = {0.5, 0.0};
  double dist = 0.0;
  REQUIRE(ck_metric_distance(m, p, q, 2, &dist) == CK_OK);
  CHECK(dist == doctest::Approx(std::atanh(0.5)).epsilon(1e-12));
  ck_metric_free(m);
}

TEST_CASE("svg rendering through the c api") {
  const char* scene =
      "{\"form\": {\"kind\": \"flat\", \"kappa\": 0, \"dim\": 2,"
      " \"S\": [1,0,0,1]},"
      " \"sites\": [[0,0],[4,0],[0,4]], \"order\": 1}";
  char* svg = nullptr;
  REQUIRE(ck_render_voronoi(scene, 0, &svg) == CK_OK);
  std::string text = svg;
  ck_string_free(svg);
  CHECK(text.rfind("<svg", 0) == 0);
  CHECK(text.find("<polygon") != std::string::npos);

  char* svg2 = nullptr;
  REQUIRE(ck_render_voronoi(scene, 2, &svg2) == CK_OK);
  CHECK(std::string(svg2) != text);  // order override changes the diagram
  ck_string_free(svg2);

  const char* ball_scene =
      "{\"form\": {\"kind\": \"elliptic\", \"kappa\": 1, \"dim\": 2,"
      " \"S\": [1,0,0, 0,1,0, 0,0,1]},"
      " \"balls\": [{\"center\": [0,0], \"radius\": 0.5}]}";
  char* svg3 = nullptr;
  REQUIRE(ck_render_balls(ball_scene, &svg3) == CK_OK);
  CHECK(std::string(svg3).find("#1f77b4") != std::string::npos);
  ck_string_free(svg3);

  CHECK(ck_render_balls(scene, &svg3) == CK_ERR_DATA);  // no balls listed
  CHECK(ck_render_voronoi("not json", 0, &svg3) == CK_ERR_DATA);
}
