#pragma once

#include <string>
#include <vector>

#include "ck/ball.hpp"
#include "ck/voronoi.hpp"

namespace ck {

struct SvgStyle {
  std::string fill = "none";
  std::string stroke = "#000000";
  double stroke_width = 1.0;
  double fill_opacity = 1.0;
};

// Collects world-space shapes and renders one deterministic SVG document:
// fixed viewport, uniform scale, y up, no timestamps or generator tags.
class SvgScene {
 public:
  void add_polygon(const std::vector<Vec>& pts, const SvgStyle& style);
  void add_polyline(const std::vector<Vec>& pts, const SvgStyle& style);
  void add_marker(const Vec& center, double radius_px,
                  const std::string& fill);
  std::string render(int size_px = 800) const;

 private:
  enum class Kind { Polygon, Polyline, Marker };
  struct Element {
    Kind kind;
    std::vector<Vec> pts;
    SvgStyle style;
    double radius_px = 0.0;
  };
  std::vector<Element> elements_;
};

// Stable fill color for an owner set, derived from an FNV-1a hash.
std::string owner_color(const std::vector<int>& owners);

// Optional labels color the site markers by class instead of black.
std::string render_voronoi_svg(const VoronoiDiagram& vd, const Mat& sites,
                               const std::vector<int>& labels = {});

// Draws each metric ball as its exact quadric outline together with the
// flat Mahalanobis circle of the same center and radius (sigma-block
// metric), for side-by-side comparison.
std::string render_balls_svg(const BilinearForm& F,
                             const std::vector<MetricBall>& balls);

}  // namespace ck
