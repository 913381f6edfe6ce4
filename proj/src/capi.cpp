#include "ckgeom.h"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "ck/eval.hpp"
#include "ck/json_io.hpp"
#include "ck/lmnn.hpp"
#include "ck/svg.hpp"
#include "ck/voronoi.hpp"

struct ck_dataset {
  ck::LabeledDataset data;
};

struct ck_metric {
  ck::LoadedMetric m;
};

namespace {

thread_local std::string g_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
ck_status guarded(F&& body) {
  g_error.clear();
  try {
    body();
    return CK_OK;
  } catch (const ck::Error& e) {
    g_error = e.what();
    switch (ck::category(e.code())) {
      case ck::ErrCategory::Usage: return CK_ERR_USAGE;
      case ck::ErrCategory::Data: return CK_ERR_DATA;
      case ck::ErrCategory::Numeric: return CK_ERR_NUMERIC;
    }
    return CK_ERR_NUMERIC;
  } catch (const std::exception& e) {
    g_error = e.what();
    return CK_ERR_NUMERIC;
  }
}

void require_args(bool ok) {
  ck::require(ok, ck::Errc::BadArgument, "null argument");
}

ck::LmnnConfig to_config(const ck_lmnn_config* cfg) {
  require_args(cfg != nullptr);
  ck::LmnnConfig out;
  out.k_targets = cfg->k_targets;
  out.tradeoff = cfg->tradeoff;
  out.gamma0 = cfg->gamma0;
  out.max_iters = cfg->max_iters;
  out.impostor_period = cfg->impostor_period;
  out.kappa_init = cfg->kappa_init;
  out.init = cfg->flat_warm_start ? ck::InitStrategy::FlatLmnnWarmStart
                                  : ck::InitStrategy::PrecisionMatrix;
  out.seed = cfg->seed;
  return out;
}

std::vector<double> parse_alphas(const char* csv) {
  if (csv == nullptr || *csv == '\0') return {0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> out;
  const std::string text = csv;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    const std::string tok = text.substr(start, end - start);
    double v = 0.0;
    const auto rc = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    ck::require(rc.ec == std::errc() && rc.ptr == tok.data() + tok.size(),
                ck::Errc::BadArgument, "bad alpha value '" + tok + "'");
    ck::require(v >= 0.0 && v <= 1.0, ck::Errc::BadArgument,
                "alpha values must lie in [0, 1]");
    out.push_back(v);
    start = end + 1;
  }
  return out;
}

ck::GeometryKind single_kind(const std::string& name) {
  ck::require(name == "flat" || name == "elliptic" || name == "hyperbolic",
              ck::Errc::BadArgument,
              "geometry must be flat, elliptic, or hyperbolic");
  return ck::kind_from_name(name);
}

}  // namespace

extern "C" {

const char* ck_last_error(void) { return g_error.c_str(); }

void ck_string_free(char* s) { std::free(s); }

ck_status ck_dataset_load(const char* path, const char* label_col,
                          char delimiter, int has_header, int standardize,
                          ck_dataset** out) {
  return guarded([&] {
    require_args(path && label_col && out);
    ck::DatasetSchema schema;
    schema.label_column = label_col;
    schema.delimiter = delimiter;
    schema.has_header = has_header != 0;
    schema.standardize = standardize != 0;
    auto* handle = new ck_dataset{ck::load_dataset(path, schema)};
    *out = handle;
  });
}

void ck_dataset_free(ck_dataset* d) { delete d; }

int ck_dataset_rows(const ck_dataset* d) { return d ? d->data.n() : 0; }
int ck_dataset_cols(const ck_dataset* d) { return d ? d->data.dim() : 0; }
int ck_dataset_classes(const ck_dataset* d) {
  return d ? d->data.n_classes() : 0;
}

void ck_lmnn_config_default(ck_lmnn_config* cfg) {
  if (!cfg) return;
  ck::LmnnConfig def;
  cfg->k_targets = def.k_targets;
  cfg->tradeoff = def.tradeoff;
  cfg->gamma0 = def.gamma0;
  cfg->max_iters = def.max_iters;
  cfg->impostor_period = def.impostor_period;
  cfg->kappa_init = def.kappa_init;
  cfg->flat_warm_start = def.init == ck::InitStrategy::FlatLmnnWarmStart;
  cfg->seed = def.seed;
}

ck_status ck_train(const ck_dataset* data, const char* geometry,
                   const ck_lmnn_config* cfg, ck_metric** out_metric,
                   char** out_report_json) {
  return guarded([&] {
    require_args(data && geometry && out_metric);
    const ck::GeometryKind kind = single_kind(geometry);
    ck::TrainResult r = ck::train(data->data, kind, to_config(cfg));
    ck::LoadedMetric lm;
    lm.form = r.state.form();
    lm.state = r.state;
    lm.standardizer = data->data.standardizer;
    *out_metric = new ck_metric{std::move(lm)};
    if (out_report_json)
      *out_report_json = dup_string(ck::train_report_to_json(r.report));
  });
}

ck_status ck_train_mixed(const ck_dataset* data, const ck_lmnn_config* cfg,
                         const char* alphas_csv, int k_eval,
                         ck_metric** out_metric, char** out_report_json) {
  return guarded([&] {
    require_args(data && out_metric);
    ck::MixedTrainResult r = ck::train_mixed(data->data, to_config(cfg),
                                             parse_alphas(alphas_csv), k_eval);
    ck::LoadedMetric lm;
    lm.is_mixed = true;
    lm.blend = r.metric;
    lm.standardizer = data->data.standardizer;
    *out_metric = new ck_metric{std::move(lm)};
    if (out_report_json)
      *out_report_json = dup_string(ck::mixed_train_report_to_json(r));
  });
}

ck_status ck_evaluate(const ck_dataset* data, const char* geometry,
                      const ck_lmnn_config* cfg, const char* protocol, int k,
                      const char* alphas_csv, double* out_mean,
                      char** out_report_json) {
  return guarded([&] {
    require_args(data && geometry && protocol);
    const ck::EvalProtocol proto = ck::EvalProtocol::parse(protocol);
    ck::AccuracyReport report;
    if (std::string(geometry) == "mixed") {
      report = ck::evaluate_mixed(data->data, to_config(cfg),
                                  parse_alphas(alphas_csv), proto, k);
    } else {
      report =
          ck::evaluate(data->data, single_kind(geometry), to_config(cfg),
                       proto, k);
    }
    if (out_mean) *out_mean = report.mean_accuracy;
    if (out_report_json)
      *out_report_json = dup_string(ck::report_to_json(report));
  });
}

ck_status ck_metric_save(const ck_metric* m, const char* path) {
  return guarded([&] {
    require_args(m && path);
    if (m->m.is_mixed) {
      ck::save_metric(path, m->m.blend, m->m.standardizer);
    } else {
      ck::require(m->m.state.has_value(), ck::Errc::BadArgument,
                  "metric has no stored factors to save");
      ck::save_metric(path, *m->m.state, m->m.standardizer);
    }
  });
}

ck_status ck_metric_load(const char* path, ck_metric** out) {
  return guarded([&] {
    require_args(path && out);
    *out = new ck_metric{ck::load_metric(path)};
  });
}

void ck_metric_free(ck_metric* m) { delete m; }

int ck_metric_dim(const ck_metric* m) {
  if (!m) return 0;
  return m->m.is_mixed ? m->m.blend.elliptic.dim() : m->m.form.dim();
}

const char* ck_metric_geometry(const ck_metric* m) {
  if (!m) return "?";
  return m->m.is_mixed ? "mixed" : ck::kind_name(m->m.form.kind());
}

ck_status ck_metric_distance(const ck_metric* m, const double* p,
                             const double* q, int dim, double* out) {
  return guarded([&] {
    require_args(m && p && q && out);
    ck::require(dim == ck_metric_dim(m), ck::Errc::DimensionMismatch,
                "point dimension does not match the metric");
    ck::Vec vp = Eigen::Map<const ck::Vec>(p, dim);
    ck::Vec vq = Eigen::Map<const ck::Vec>(q, dim);
    if (m->m.standardizer) {
      vp = m->m.standardizer->apply(vp);
      vq = m->m.standardizer->apply(vq);
    }
    *out = m->m.distance(vp, vq);
  });
}

ck_status ck_render_voronoi(const char* scene_json, int order_override,
                            char** out_svg) {
  return guarded([&] {
    require_args(scene_json && out_svg);
    ck::Scene scene = ck::scene_from_json(scene_json);
    const int order = order_override > 0 ? order_override : scene.order;
    ck::VoronoiDiagram vd = ck::power_voronoi(scene.form, scene.sites, order);
    *out_svg =
        dup_string(ck::render_voronoi_svg(vd, scene.sites, scene.labels));
  });
}

ck_status ck_render_balls(const char* scene_json, char** out_svg) {
  return guarded([&] {
    require_args(scene_json && out_svg);
    ck::Scene scene = ck::scene_from_json(scene_json);
    ck::require(!scene.balls.empty(), ck::Errc::EmptyScene,
                "scene lists no balls");
    *out_svg = dup_string(ck::render_balls_svg(scene.form, scene.balls));
  });
}

}  // extern "C"
