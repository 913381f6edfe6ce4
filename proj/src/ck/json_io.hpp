#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ck/ball.hpp"
#include "ck/dataset.hpp"
#include "ck/eval.hpp"
#include "ck/lmnn.hpp"
#include "ck/mixed.hpp"

namespace ck {

// Canonical writers: fixed key order, 17-significant-digit numbers, no
// timestamps.  Equal values always serialize to identical bytes.
std::string form_to_json(const BilinearForm& F);
std::string metric_to_json(const MetricState& m,
                           const std::optional<Standardizer>& z = {});
std::string metric_to_json(const MixedMetric& m,
                           const std::optional<Standardizer>& z = {});
std::string report_to_json(const AccuracyReport& r);
std::string train_report_to_json(const TrainReport& r);
std::string mixed_train_report_to_json(const MixedTrainResult& r);

// A metric file holds either one flat/curved metric or a mixed blend.
// Files written by this library carry the triangular factors and reload as
// a full MetricState; hand-written files may give just the form matrix,
// which is enough for distance evaluation.
struct LoadedMetric {
  bool is_mixed = false;
  MixedMetric blend;                 // valid when is_mixed
  BilinearForm form;                 // valid when !is_mixed
  std::optional<MetricState> state;  // present when factors were stored
  std::optional<Standardizer> standardizer;

  double distance(const Vec& p, const Vec& q) const {
    return is_mixed ? mixed_distance(blend, p, q) : ck_distance(form, p, q);
  }
};

BilinearForm form_from_json(const std::string& text);
LoadedMetric metric_from_json(const std::string& text);

void save_metric(const std::string& path, const MetricState& m,
                 const std::optional<Standardizer>& z = {});
void save_metric(const std::string& path, const MixedMetric& m,
                 const std::optional<Standardizer>& z = {});
LoadedMetric load_metric(const std::string& path);

// Scene input for the SVG subcommands: a form plus sites for diagrams
// and/or metric balls for sphere plots.
struct Scene {
  BilinearForm form;
  Mat sites;                // zero rows when absent
  std::vector<int> labels;  // empty when absent
  int order = 1;
  std::vector<MetricBall> balls;
};

Scene scene_from_json(const std::string& text);
Scene load_scene(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace ck
