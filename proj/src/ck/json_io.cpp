#include "ck/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ck {

namespace {

using nlohmann::json;

std::string num(double v) {
  require(std::isfinite(v), Errc::NumericalFailure,
          "cannot serialize a non-finite number");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void append_array(std::string& out, const double* vals, size_t n) {
  out += '[';
  for (size_t i = 0; i < n; ++i) {
    if (i) out += ',';
    out += num(vals[i]);
  }
  out += ']';
}

std::string row_major(const Mat& M) {
  std::string out;
  out.reserve(size_t(M.size()) * 20 + 2);
  out += '[';
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if (i || j) out += ',';
      out += num(M(i, j));
    }
  }
  out += ']';
  return out;
}

std::string vec_array(const Vec& v) {
  std::string out;
  append_array(out, v.data(), size_t(v.size()));
  return out;
}

std::string double_array(const std::vector<double>& v) {
  std::string out;
  append_array(out, v.data(), v.size());
  return out;
}

// The form serializes as kind/kappa/dim/S; flat stores the d x d matrix Q
// and curved kinds the full homogeneous (d+1) x (d+1) matrix.
void append_form_fields(std::string& out, const BilinearForm& F,
                        const std::string& pad) {
  out += pad + "\"kind\": \"" + kind_name(F.kind()) + "\",\n";
  out += pad + "\"kappa\": " + num(F.kappa()) + ",\n";
  out += pad + "\"dim\": " + std::to_string(F.dim()) + ",\n";
  const Mat S = F.kind() == GeometryKind::Flat ? F.sigma_block() : F.matrix();
  out += pad + "\"S\": " + row_major(S);
}

void append_standardizer(std::string& out, const std::optional<Standardizer>& z,
                         const std::string& pad) {
  if (!z) return;
  out += ",\n" + pad + "\"standardizer\": {\"mean\": " + vec_array(z->mean) +
         ", \"stddev\": " + vec_array(z->stddev) + "}";
}

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  require(it != j.end(), Errc::SchemaError,
          std::string("missing field '") + key + "'");
  return *it;
}

double get_num(const json& j, const char* key) {
  const json& v = field(j, key);
  require(v.is_number(), Errc::SchemaError,
          std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::string get_str(const json& j, const char* key) {
  const json& v = field(j, key);
  require(v.is_string(), Errc::SchemaError,
          std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<double> get_double_array(const json& v, const char* key) {
  require(v.is_array(), Errc::SchemaError,
          std::string("field '") + key + "' must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& e : v) {
    require(e.is_number(), Errc::SchemaError,
            std::string("field '") + key + "' must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

Mat square_from_row_major(const std::vector<double>& vals, const char* key) {
  const auto n = size_t(std::llround(std::sqrt(double(vals.size()))));
  require(n >= 1 && n * n == vals.size(), Errc::SchemaError,
          std::string("field '") + key + "' must hold a square matrix");
  Mat M(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) M(Eigen::Index(i), Eigen::Index(j)) = vals[i * n + j];
  return M;
}

Vec vec_from(const std::vector<double>& vals) {
  Vec v(Eigen::Index(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) v(Eigen::Index(i)) = vals[i];
  return v;
}

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  require(!j.is_discarded(), Errc::ParseError, "invalid JSON");
  require(j.is_object(), Errc::SchemaError, "top level must be a JSON object");
  return j;
}

BilinearForm form_from(const json& j) {
  const GeometryKind kind = kind_from_name(get_str(j, "kind"));
  const double kappa = get_num(j, "kappa");
  const json& dimv = field(j, "dim");
  require(dimv.is_number_integer(), Errc::SchemaError,
          "field 'dim' must be an integer");
  const int dim = dimv.get<int>();
  require(dim >= 1, Errc::SchemaError, "field 'dim' must be positive");
  Mat S = square_from_row_major(get_double_array(field(j, "S"), "S"), "S");
  if (kind == GeometryKind::Flat) {
    require(S.rows() == dim, Errc::SchemaError,
            "flat form matrix must be dim x dim");
    require(kappa == 0.0, Errc::SchemaError, "flat form must have kappa 0");
    return BilinearForm::flat(S);
  }
  require(S.rows() == dim + 1, Errc::SchemaError,
          "curved form matrix must be (dim+1) x (dim+1)");
  return BilinearForm::curved(S, kind, kappa);
}

std::optional<Standardizer> standardizer_from(const json& j) {
  auto it = j.find("standardizer");
  if (it == j.end()) return std::nullopt;
  require(it->is_object(), Errc::SchemaError,
          "field 'standardizer' must be an object");
  Standardizer z;
  z.mean = vec_from(get_double_array(field(*it, "mean"), "mean"));
  z.stddev = vec_from(get_double_array(field(*it, "stddev"), "stddev"));
  require(z.mean.size() == z.stddev.size(), Errc::SchemaError,
          "standardizer mean and stddev must have equal length");
  for (Eigen::Index i = 0; i < z.stddev.size(); ++i)
    require(z.stddev(i) > 0.0, Errc::InvariantViolation,
            "standardizer stddev must be positive");
  return z;
}

MetricState state_from(const json& j, GeometryKind kind, double kappa,
                       int dim) {
  MetricState m;
  m.kind = kind;
  m.kappa = kappa;
  m.L = square_from_row_major(
      get_double_array(field(j, "factor_L"), "factor_L"), "factor_L");
  const int want = kind == GeometryKind::Flat ? dim : dim + 1;
  require(int(m.L.rows()) == want, Errc::SchemaError,
          "factor_L size does not match kind and dim");
  for (Eigen::Index i = 0; i < m.L.rows(); ++i) {
    for (Eigen::Index c = i + 1; c < m.L.cols(); ++c)
      require(m.L(i, c) == 0.0, Errc::SchemaError,
              "factor_L must be lower triangular");
    require(m.L(i, i) > 0.0, Errc::InvariantViolation,
            "factor_L diagonal must be positive");
  }
  m.D = vec_from(
      get_double_array(field(j, "factor_D"), "factor_D"));
  if (kind == GeometryKind::Hyperbolic) {
    require(int(m.D.size()) == dim + 1, Errc::SchemaError,
            "factor_D must have dim + 1 entries");
    const double last = m.D(dim);
    require(last != 0.0, Errc::InvariantViolation,
            "factor_D entries must be nonzero");
    for (int i = 0; i < dim; ++i)
      require(m.D(i) * last < 0.0, Errc::InvariantViolation,
              "factor_D must have one minority sign in the last entry");
  } else {
    require(m.D.size() == 0, Errc::SchemaError,
            "factor_D must be empty for this kind");
  }
  return m;
}

}  // namespace

std::string form_to_json(const BilinearForm& F) {
  std::string out = "{\n";
  append_form_fields(out, F, "  ");
  out += "\n}\n";
  return out;
}

std::string metric_to_json(const MetricState& m,
                           const std::optional<Standardizer>& z) {
  const BilinearForm F = m.form();
  std::string out = "{\n";
  append_form_fields(out, F, "  ");
  out += ",\n  \"factor_L\": " + row_major(m.L);
  out += ",\n  \"factor_D\": " + vec_array(m.D);
  append_standardizer(out, z, "  ");
  out += "\n}\n";
  return out;
}

std::string metric_to_json(const MixedMetric& m,
                           const std::optional<Standardizer>& z) {
  std::string out = "{\n  \"kind\": \"mixed\",\n";
  out += "  \"alpha\": " + num(m.alpha) + ",\n";
  out += "  \"elliptic\": {\n";
  append_form_fields(out, m.elliptic, "    ");
  out += "\n  },\n  \"hyperbolic\": {\n";
  append_form_fields(out, m.hyperbolic, "    ");
  out += "\n  }";
  append_standardizer(out, z, "  ");
  out += "\n}\n";
  return out;
}

std::string report_to_json(const AccuracyReport& r) {
  std::string out = "{\n";
  out += "  \"protocol\": \"" + r.protocol + "\",\n";
  out += "  \"k\": " + std::to_string(r.k) + ",\n";
  out += "  \"geometry\": \"" + r.geometry + "\",\n";
  out += "  \"seed\": " + std::to_string(r.seed) + ",\n";
  out += "  \"mean\": " + num(r.mean_accuracy) + ",\n";
  out += "  \"per_repeat\": " + double_array(r.per_repeat) + ",\n";
  out += "  \"out_of_domain\": " + std::to_string(r.out_of_domain) + "\n}\n";
  return out;
}

namespace {

void append_train_report_fields(std::string& out, const TrainReport& r,
                                const std::string& pad) {
  out += pad + "\"initial_cost\": " + num(r.initial_cost) + ",\n";
  out += pad + "\"final_cost\": " + num(r.final_cost) + ",\n";
  out += pad + "\"iterations\": " + std::to_string(r.iterations) + ",\n";
  out += pad + "\"halvings\": " + std::to_string(r.halvings) + ",\n";
  out += pad + "\"gamma_underflow\": " +
         (r.gamma_underflow ? std::string("true") : std::string("false")) +
         ",\n";
  out += pad + "\"cost_trace\": " + double_array(r.cost_trace) + ",\n";
  out += pad + "\"gamma_trace\": " + double_array(r.gamma_trace);
}

}  // namespace

std::string train_report_to_json(const TrainReport& r) {
  std::string out = "{\n";
  append_train_report_fields(out, r, "  ");
  out += "\n}\n";
  return out;
}

std::string mixed_train_report_to_json(const MixedTrainResult& r) {
  std::string out = "{\n";
  out += "  \"alpha\": " + num(r.alpha) + ",\n";
  out += "  \"alpha_accuracies\": " + double_array(r.alpha_accuracies) + ",\n";
  out += "  \"holdout_size\": " + std::to_string(r.holdout.size()) + ",\n";
  out += "  \"elliptic\": {\n";
  append_train_report_fields(out, r.elliptic_report, "    ");
  out += "\n  },\n  \"hyperbolic\": {\n";
  append_train_report_fields(out, r.hyperbolic_report, "    ");
  out += "\n  }\n}\n";
  return out;
}

BilinearForm form_from_json(const std::string& text) {
  return form_from(parse_text(text));
}

LoadedMetric metric_from_json(const std::string& text) {
  const json j = parse_text(text);
  LoadedMetric out;
  out.standardizer = standardizer_from(j);
  if (get_str(j, "kind") == "mixed") {
    out.is_mixed = true;
    const json& e = field(j, "elliptic");
    const json& h = field(j, "hyperbolic");
    require(e.is_object() && h.is_object(), Errc::SchemaError,
            "mixed components must be objects");
    out.blend = make_mixed(form_from(e), form_from(h), get_num(j, "alpha"));
    return out;
  }
  out.form = form_from(j);
  if (j.contains("factor_L")) {
    MetricState m =
        state_from(j, out.form.kind(), out.form.kappa(), out.form.dim());
    const Mat rebuilt = m.form().matrix();
    const Mat stored = out.form.matrix();
    const double scale = 1.0 + stored.cwiseAbs().maxCoeff();
    require((rebuilt - stored).cwiseAbs().maxCoeff() <= 1e-9 * scale,
            Errc::InvariantViolation,
            "form matrix does not match the stored factors");
    out.state = std::move(m);
  }
  return out;
}

void save_metric(const std::string& path, const MetricState& m,
                 const std::optional<Standardizer>& z) {
  write_text_file(path, metric_to_json(m, z));
}

void save_metric(const std::string& path, const MixedMetric& m,
                 const std::optional<Standardizer>& z) {
  write_text_file(path, metric_to_json(m, z));
}

LoadedMetric load_metric(const std::string& path) {
  return metric_from_json(read_text_file(path));
}

Scene scene_from_json(const std::string& text) {
  const json j = parse_text(text);
  Scene scene;
  const json& f = field(j, "form");
  require(f.is_object(), Errc::SchemaError, "field 'form' must be an object");
  scene.form = form_from(f);
  scene.sites = Mat(0, scene.form.dim());
  if (j.contains("sites")) {
    const json& sv = j["sites"];
    require(sv.is_array(), Errc::SchemaError, "field 'sites' must be an array");
    scene.sites = Mat(Eigen::Index(sv.size()), scene.form.dim());
    Eigen::Index row = 0;
    for (const json& s : sv) {
      std::vector<double> coords = get_double_array(s, "sites");
      require(int(coords.size()) == scene.form.dim(), Errc::SchemaError,
              "each site needs one coordinate per dimension");
      scene.sites.row(row++) = vec_from(coords).transpose();
    }
  }
  if (j.contains("labels")) {
    const json& lv = j["labels"];
    require(lv.is_array(), Errc::SchemaError,
            "field 'labels' must be an array");
    require(lv.size() == size_t(scene.sites.rows()), Errc::SchemaError,
            "labels must match the number of sites");
    for (const json& e : lv) {
      require(e.is_number_integer(), Errc::SchemaError,
              "labels must be integers");
      scene.labels.push_back(e.get<int>());
    }
  }
  if (j.contains("order")) {
    const json& ov = j["order"];
    require(ov.is_number_integer(), Errc::SchemaError,
            "field 'order' must be an integer");
    scene.order = ov.get<int>();
    require(scene.order >= 1, Errc::SchemaError, "order must be at least 1");
  }
  if (j.contains("balls")) {
    const json& bv = j["balls"];
    require(bv.is_array(), Errc::SchemaError, "field 'balls' must be an array");
    for (const json& b : bv) {
      require(b.is_object(), Errc::SchemaError, "each ball must be an object");
      MetricBall ball;
      ball.center =
          vec_from(get_double_array(field(b, "center"), "center"));
      require(int(ball.center.size()) == scene.form.dim(), Errc::SchemaError,
              "ball center needs one coordinate per dimension");
      ball.radius = get_num(b, "radius");
      scene.balls.push_back(std::move(ball));
    }
  }
  return scene;
}

Scene load_scene(const std::string& path) {
  return scene_from_json(read_text_file(path));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(bool(in), Errc::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(bool(out), Errc::ParseError, "cannot open '" + path + "' for writing");
  out << text;
  require(bool(out), Errc::ParseError, "failed writing '" + path + "'");
}

}  // namespace ck
