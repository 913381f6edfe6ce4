#pragma once

#include <vector>

#include "ck/geom2d.hpp"

namespace ck {

struct VoronoiCell {
  std::vector<int> owners;  // the cell's k nearest sites, ascending
  ConvexPolygon poly;
};

struct VoronoiDiagram {
  int order = 1;
  ConvexPolygon domain;
  std::vector<PowerBall> balls;  // one per site
  std::vector<VoronoiCell> cells;
};

// Ids of the `order` sites with smallest power at x, ascending; power ties
// resolve toward the smaller site id.
std::vector<int> nearest_set(const std::vector<PowerBall>& balls, const Vec& x,
                             int order);

// Order-k diagram of the sites under the form's distance, clipped to the
// drawing domain. Candidate owner sets are seeded from a fixed 200 x 200
// grid over the domain's bounding box.
VoronoiDiagram power_voronoi(const BilinearForm& F, const Mat& sites,
                             int order);

}  // namespace ck
