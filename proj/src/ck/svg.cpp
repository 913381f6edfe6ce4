#include "ck/svg.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

namespace ck {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string color_attr(const SvgStyle& st) {
  std::string s = " fill=\"" + st.fill + "\" stroke=\"" + st.stroke +
                  "\" stroke-width=\"" + fmt(st.stroke_width) + "\"";
  if (st.fill != "none" && st.fill_opacity != 1.0) {
    s += " fill-opacity=\"" + fmt(st.fill_opacity) + "\"";
  }
  return s;
}

std::vector<Vec> ellipse_outline(const Mat& shape, const Vec& center,
                                 double r2, int segments = 256) {
  const Mat half = inverse_sqrt_spd(shape);
  const double r = std::sqrt(r2);
  std::vector<Vec> pts;
  pts.reserve(size_t(segments));
  for (int i = 0; i < segments; ++i) {
    const double th = 2.0 * M_PI * double(i) / double(segments);
    Vec dir(2);
    dir << std::cos(th), std::sin(th);
    pts.push_back(center + r * (half * dir));
  }
  return pts;
}

}  // namespace

void SvgScene::add_polygon(const std::vector<Vec>& pts, const SvgStyle& style) {
  require(pts.size() >= 3, Errc::BadArgument, "polygon needs three points");
  elements_.push_back(Element{Kind::Polygon, pts, style, 0.0});
}

void SvgScene::add_polyline(const std::vector<Vec>& pts,
                            const SvgStyle& style) {
  require(pts.size() >= 2, Errc::BadArgument, "polyline needs two points");
  elements_.push_back(Element{Kind::Polyline, pts, style, 0.0});
}

void SvgScene::add_marker(const Vec& center, double radius_px,
                          const std::string& fill) {
  SvgStyle st;
  st.fill = fill;
  st.stroke = "none";
  elements_.push_back(Element{Kind::Marker, {center}, st, radius_px});
}

std::string SvgScene::render(int size_px) const {
  require(!elements_.empty(), Errc::EmptyScene, "nothing to draw");
  double lox = elements_[0].pts[0](0), hix = lox;
  double loy = elements_[0].pts[0](1), hiy = loy;
  for (const Element& e : elements_) {
    for (const Vec& v : e.pts) {
      lox = std::min(lox, v(0));
      hix = std::max(hix, v(0));
      loy = std::min(loy, v(1));
      hiy = std::max(hiy, v(1));
    }
  }
  const double margin = 0.04 * size_px;
  const double span = std::max({hix - lox, hiy - loy, 1e-9});
  const double scale = (size_px - 2.0 * margin) / span;
  const double offx = margin + (size_px - 2.0 * margin - (hix - lox) * scale) / 2.0;
  const double offy = margin + (size_px - 2.0 * margin - (hiy - loy) * scale) / 2.0;
  auto tx = [&](const Vec& v) { return offx + (v(0) - lox) * scale; };
  auto ty = [&](const Vec& v) {
    return double(size_px) - (offy + (v(1) - loy) * scale);
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(size_px) + "\" height=\"" + std::to_string(size_px) +
         "\" viewBox=\"0 0 " + std::to_string(size_px) + " " +
         std::to_string(size_px) + "\">\n";
  for (const Element& e : elements_) {
    if (e.kind == Kind::Marker) {
      out += "<circle cx=\"" + fmt(tx(e.pts[0])) + "\" cy=\"" +
             fmt(ty(e.pts[0])) + "\" r=\"" + fmt(e.radius_px) + "\" fill=\"" +
             e.style.fill + "\"/>\n";
      continue;
    }
    out += e.kind == Kind::Polygon ? "<polygon points=\""
                                   : "<polyline points=\"";
    for (size_t i = 0; i < e.pts.size(); ++i) {
      if (i) out += " ";
      out += fmt(tx(e.pts[i])) + "," + fmt(ty(e.pts[i]));
    }
    out += "\"" + color_attr(e.style) + "/>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string owner_color(const std::vector<int>& owners) {
  uint64_t h = 1469598103934665603ULL;
  for (int o : owners) {
    for (int shift = 0; shift < 32; shift += 8) {
      h ^= uint64_t((o >> shift) & 0xFF);
      h *= 1099511628211ULL;
    }
  }
  const unsigned r = 64 + unsigned(h % 160);
  const unsigned g = 64 + unsigned((h >> 16) % 160);
  const unsigned b = 64 + unsigned((h >> 32) % 160);
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

std::string render_voronoi_svg(const VoronoiDiagram& vd, const Mat& sites,
                               const std::vector<int>& labels) {
  require(labels.empty() || labels.size() == size_t(sites.rows()),
          Errc::BadArgument, "labels must match the number of sites");
  SvgScene scene;
  for (const VoronoiCell& cell : vd.cells) {
    SvgStyle st;
    st.fill = owner_color(cell.owners);
    st.fill_opacity = 0.65;
    st.stroke = "#333333";
    st.stroke_width = 0.8;
    scene.add_polygon(cell.poly.pts, st);
  }
  if (!vd.domain.empty()) {
    SvgStyle st;
    st.stroke = "#000000";
    st.stroke_width = 1.5;
    std::vector<Vec> loop = vd.domain.pts;
    loop.push_back(loop.front());
    scene.add_polyline(loop, st);
  }
  for (int i = 0; i < sites.rows(); ++i) {
    const std::string fill =
        labels.empty() ? "#000000" : owner_color({labels[size_t(i)]});
    scene.add_marker(sites.row(i).transpose(), 3.0, fill);
  }
  return scene.render();
}

std::string render_balls_svg(const BilinearForm& F,
                             const std::vector<MetricBall>& balls) {
  SvgScene scene;
  const std::string ck_color =
      F.kind() == GeometryKind::Elliptic ? "#d62728" : "#2ca02c";
  for (const MetricBall& ball : balls) {
    QuadricBall q = ball_to_quadric(F, ball);
    SvgStyle ck_st;
    ck_st.stroke = ck_color;
    ck_st.stroke_width = 1.6;
    std::vector<Vec> outline = ellipse_outline(q.shape, q.center, q.r2);
    outline.push_back(outline.front());
    scene.add_polyline(outline, ck_st);

    SvgStyle flat_st;
    flat_st.stroke = "#1f77b4";
    flat_st.stroke_width = 1.2;
    std::vector<Vec> circle = ellipse_outline(
        F.sigma_block(), ball.center, ball.radius * ball.radius);
    circle.push_back(circle.front());
    scene.add_polyline(circle, flat_st);

    scene.add_marker(ball.center, 2.5, "#000000");
  }
  return scene.render();
}

}  // namespace ck
