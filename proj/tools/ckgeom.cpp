#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ckgeom.h"

namespace {

int fail_code(ck_status st) {
  std::fprintf(stderr, "error: %s\n", ck_last_error());
  return int(st);
}

int usage_error(const std::string& msg) {
  std::fprintf(stderr, "error: %s\n", msg.c_str());
  return 1;
}

struct SchemaFlags {
  std::string label_col = "last";
  std::string delimiter = ",";
  bool no_header = false;
  bool no_standardize = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--label-col", label_col,
                    "label column: first, last, an index, or a header name");
    cmd->add_option("--delimiter", delimiter, "field delimiter (one char)");
    cmd->add_flag("--no-header", no_header, "data file has no header row");
    cmd->add_flag("--no-standardize", no_standardize,
                  "keep raw feature scales");
  }
};

struct TrainFlags {
  ck_lmnn_config cfg;
  bool warm_start = false;

  TrainFlags() { ck_lmnn_config_default(&cfg); }

  void attach(CLI::App* cmd) {
    cmd->add_option("--k-targets", cfg.k_targets,
                    "target neighbors per sample");
    cmd->add_option("--tradeoff", cfg.tradeoff,
                    "pull/push weight in [0, 1]");
    cmd->add_option("--gamma", cfg.gamma0, "initial gradient step");
    cmd->add_option("--iters", cfg.max_iters, "maximum iterations");
    cmd->add_option("--impostor-period", cfg.impostor_period,
                    "iterations between impostor refreshes");
    cmd->add_option("--kappa", cfg.kappa_init,
                    "elliptic curvature / hyperbolic cone padding");
    cmd->add_option("--seed", cfg.seed, "random seed");
    cmd->add_flag("--warm-start", warm_start,
                  "initialize curved training from a flat LMNN run");
  }

  const ck_lmnn_config* get() {
    cfg.flat_warm_start = warm_start ? 1 : 0;
    return &cfg;
  }
};

int load_data(const std::string& path, const SchemaFlags& s,
              ck_dataset** out) {
  if (s.delimiter.size() != 1)
    return usage_error("--delimiter must be a single character");
  ck_status st =
      ck_dataset_load(path.c_str(), s.label_col.c_str(), s.delimiter[0],
                      s.no_header ? 0 : 1, s.no_standardize ? 0 : 1, out);
  return st == CK_OK ? 0 : fail_code(st);
}

bool parse_point(const std::string& text, std::vector<double>* out) {
  out->clear();
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    const std::string tok = text.substr(start, end - start);
    double v = 0.0;
    const auto rc = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (rc.ec != std::errc() || rc.ptr != tok.data() + tok.size())
      return false;
    out->push_back(v);
    start = end + 1;
  }
  return !out->empty();
}

int read_file(const std::string& path, std::string* out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "error: cannot open '%s'\n", path.c_str());
    return 2;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  *out = ss.str();
  return 0;
}

int write_file(const std::string& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  if (out) out << text;
  if (!out) {
    std::fprintf(stderr, "error: cannot write '%s'\n", path.c_str());
    return 2;
  }
  return 0;
}

// metric.json -> metric.report.json
std::string report_path(const std::string& out) {
  const std::string suffix = ".json";
  if (out.size() > suffix.size() &&
      out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0)
    return out.substr(0, out.size() - suffix.size()) + ".report.json";
  return out + ".report.json";
}

// report.json + geometry -> report.elliptic.json
std::string geometry_path(const std::string& out, const std::string& geom) {
  const std::string suffix = ".json";
  if (out.size() > suffix.size() &&
      out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0)
    return out.substr(0, out.size() - suffix.size()) + "." + geom + ".json";
  return out + "." + geom + ".json";
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    out.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

bool known_geometry(const std::string& g) {
  return g == "flat" || g == "elliptic" || g == "hyperbolic" || g == "mixed";
}

struct DatasetGuard {
  ck_dataset* d = nullptr;
  ~DatasetGuard() { ck_dataset_free(d); }
};
struct MetricGuard {
  ck_metric* m = nullptr;
  ~MetricGuard() { ck_metric_free(m); }
};
struct StringGuard {
  char* s = nullptr;
  ~StringGuard() { ck_string_free(s); }
};

int run_train(const std::string& geometry, const std::string& data_path,
              const SchemaFlags& schema, TrainFlags& tf,
              const std::string& alphas, int k, const std::string& out) {
  if (!known_geometry(geometry))
    return usage_error("unknown geometry '" + geometry + "'");
  DatasetGuard data;
  if (int rc = load_data(data_path, schema, &data.d)) return rc;
  MetricGuard metric;
  StringGuard report;
  ck_status st;
  if (geometry == "mixed") {
    st = ck_train_mixed(data.d, tf.get(),
                        alphas.empty() ? nullptr : alphas.c_str(), k,
                        &metric.m, &report.s);
  } else {
    st = ck_train(data.d, geometry.c_str(), tf.get(), &metric.m, &report.s);
  }
  if (st != CK_OK) return fail_code(st);
  st = ck_metric_save(metric.m, out.c_str());
  if (st != CK_OK) return fail_code(st);
  if (int rc = write_file(report_path(out), report.s)) return rc;
  std::printf("wrote %s\nwrote %s\n", out.c_str(), report_path(out).c_str());
  return 0;
}

int run_eval(const std::string& geometry, const std::string& data_path,
             const SchemaFlags& schema, TrainFlags& tf,
             const std::string& alphas, const std::string& protocol, int k,
             const std::string& out) {
  const std::vector<std::string> geoms = split_list(geometry);
  for (const std::string& g : geoms)
    if (!known_geometry(g)) return usage_error("unknown geometry '" + g + "'");
  DatasetGuard data;
  if (int rc = load_data(data_path, schema, &data.d)) return rc;
  std::printf("%-20s %-12s %4s %10s\n", "protocol", "geometry", "k",
              "accuracy");
  for (const std::string& g : geoms) {
    double mean = 0.0;
    StringGuard report;
    ck_status st = ck_evaluate(data.d, g.c_str(), tf.get(), protocol.c_str(),
                               k, alphas.empty() ? nullptr : alphas.c_str(),
                               &mean, &report.s);
    if (st != CK_OK) return fail_code(st);
    std::printf("%-20s %-12s %4d %10.4f\n", protocol.c_str(), g.c_str(), k,
                mean);
    if (!out.empty()) {
      const std::string path =
          geoms.size() == 1 ? out : geometry_path(out, g);
      if (int rc = write_file(path, report.s)) return rc;
    }
  }
  return 0;
}

int run_dist(const std::string& metric_path, const std::string& p_text,
             const std::string& q_text) {
  std::vector<double> p, q;
  if (!parse_point(p_text, &p) || !parse_point(q_text, &q))
    return usage_error("points must be comma-separated numbers");
  if (p.size() != q.size())
    return usage_error("--p and --q must have the same dimension");
  MetricGuard metric;
  ck_status st = ck_metric_load(metric_path.c_str(), &metric.m);
  if (st != CK_OK) return fail_code(st);
  double d = 0.0;
  st = ck_metric_distance(metric.m, p.data(), q.data(), int(p.size()), &d);
  if (st != CK_OK) return fail_code(st);
  std::printf("%.9g\n", d);
  return 0;
}

int run_voronoi(const std::string& scene_path, int order,
                const std::string& out) {
  std::string scene;
  if (int rc = read_file(scene_path, &scene)) return rc;
  StringGuard svg;
  ck_status st = ck_render_voronoi(scene.c_str(), order, &svg.s);
  if (st != CK_OK) return fail_code(st);
  return write_file(out, svg.s);
}

int run_balls(const std::string& scene_path, const std::string& out) {
  std::string scene;
  if (int rc = read_file(scene_path, &scene)) return rc;
  StringGuard svg;
  ck_status st = ck_render_balls(scene.c_str(), &svg.s);
  if (st != CK_OK) return fail_code(st);
  return write_file(out, svg.s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cayley-Klein metrics: curved metric learning, k-NN "
               "evaluation, and power diagrams"};
  app.require_subcommand(1);

  std::string geometry = "flat", data_path, alphas, protocol = "loo";
  std::string metric_path, p_text, q_text, out;
  int k = 3, order = 0;
  SchemaFlags schema;
  TrainFlags tf;

  CLI::App* train = app.add_subcommand("train", "learn a metric from a CSV");
  train->add_option("--geometry", geometry,
                    "flat, elliptic, hyperbolic, or mixed")
      ->required();
  train->add_option("--data", data_path, "CSV file")->required();
  schema.attach(train);
  tf.attach(train);
  train->add_option("--alphas", alphas, "mixed blend weights, e.g. 0,0.5,1");
  train->add_option("--k", k, "neighbors for mixed holdout selection");
  train->add_option("--out", out, "metric JSON output path")->required();

  CLI::App* eval = app.add_subcommand("eval", "score k-NN accuracy");
  eval->add_option("--geometry", geometry,
                   "comma list of flat, elliptic, hyperbolic, mixed")
      ->required();
  eval->add_option("--data", data_path, "CSV file")->required();
  schema.attach(eval);
  tf.attach(eval);
  eval->add_option("--alphas", alphas, "mixed blend weights");
  eval->add_option("--protocol", protocol, "loo or split:SIZE:REPEATS");
  eval->add_option("--k", k, "neighbors for classification");
  eval->add_option("--out", out, "accuracy report JSON path");

  CLI::App* dist = app.add_subcommand("dist", "distance between two points");
  dist->add_option("--metric", metric_path, "metric JSON file")->required();
  dist->add_option("--p", p_text, "first point, comma-separated")->required();
  dist->add_option("--q", q_text, "second point, comma-separated")->required();

  CLI::App* voronoi =
      app.add_subcommand("voronoi", "render a power diagram SVG");
  voronoi->add_option("--data", data_path, "scene JSON file")->required();
  voronoi->add_option("--order", order, "override the scene's diagram order");
  voronoi->add_option("--out", out, "SVG output path")->required();

  CLI::App* balls = app.add_subcommand(
      "balls", "render metric spheres next to their flat counterparts");
  balls->add_option("--data", data_path, "scene JSON file")->required();
  balls->add_option("--out", out, "SVG output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (train->parsed())
    return run_train(geometry, data_path, schema, tf, alphas, k, out);
  if (eval->parsed())
    return run_eval(geometry, data_path, schema, tf, alphas, protocol, k, out);
  if (dist->parsed()) return run_dist(metric_path, p_text, q_text);
  if (voronoi->parsed()) return run_voronoi(data_path, order, out);
  if (balls->parsed()) return run_balls(data_path, out);
  return 1;
}
