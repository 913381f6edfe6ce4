#include "ck/voronoi.hpp"

#include <algorithm>
#include <set>

namespace ck {

namespace {
constexpr int kSeedGrid = 200;
}

std::vector<int> nearest_set(const std::vector<PowerBall>& balls, const Vec& x,
                             int order) {
  require(order >= 1 && size_t(order) <= balls.size(), Errc::BadArgument,
          "order must lie in [1, site count]");
  std::vector<std::pair<double, int>> ranked;
  ranked.reserve(balls.size());
  for (size_t i = 0; i < balls.size(); ++i) {
    ranked.emplace_back(balls[i].power(x), int(i));
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<int> out(static_cast<size_t>(order), 0);
  for (int i = 0; i < order; ++i) out[size_t(i)] = ranked[size_t(i)].second;
  std::sort(out.begin(), out.end());
  return out;
}

VoronoiDiagram power_voronoi(const BilinearForm& F, const Mat& sites,
                             int order) {
  require(F.dim() == 2, Errc::BadArgument, "diagrams are two-dimensional");
  require(sites.cols() == 2, Errc::DimensionMismatch,
          "sites must be two-dimensional");
  const int n = int(sites.rows());
  require(n >= 1, Errc::BadArgument, "need at least one site");
  require(order >= 1 && order <= n, Errc::BadArgument,
          "order must lie in [1, site count]");
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      require((sites.row(i) - sites.row(j)).cwiseAbs().maxCoeff() > 1e-12,
              Errc::DuplicateSites, "duplicate sites");
    }
  }

  VoronoiDiagram vd;
  vd.order = order;
  vd.domain = domain_polygon(F, sites);
  vd.balls.reserve(size_t(n));
  for (int i = 0; i < n; ++i) {
    vd.balls.push_back(to_power_ball(F, sites.row(i).transpose()));
  }

  double lox = vd.domain.pts[0](0), hix = lox;
  double loy = vd.domain.pts[0](1), hiy = loy;
  for (const Vec& v : vd.domain.pts) {
    lox = std::min(lox, v(0));
    hix = std::max(hix, v(0));
    loy = std::min(loy, v(1));
    hiy = std::max(hiy, v(1));
  }

  std::set<std::vector<int>> seen;
  Vec g(2);
  for (int iy = 0; iy < kSeedGrid; ++iy) {
    for (int ix = 0; ix < kSeedGrid; ++ix) {
      g(0) = lox + (hix - lox) * double(ix) / double(kSeedGrid - 1);
      g(1) = loy + (hiy - loy) * double(iy) / double(kSeedGrid - 1);
      seen.insert(nearest_set(vd.balls, g, order));
    }
  }

  for (const std::vector<int>& owners : seen) {
    ConvexPolygon cell = vd.domain;
    for (int t : owners) {
      for (int s = 0; s < n && !cell.empty(); ++s) {
        if (std::binary_search(owners.begin(), owners.end(), s)) continue;
        cell = clip(cell, radical_halfplane(vd.balls[size_t(t)],
                                            vd.balls[size_t(s)]));
      }
      if (cell.empty()) break;
    }
    if (!cell.empty()) vd.cells.push_back(VoronoiCell{owners, cell});
  }
  return vd;
}

}  // namespace ck
