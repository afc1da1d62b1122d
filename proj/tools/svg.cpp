#include "svg.hpp"

#include "tropicount/duality.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace tropicount::cli {

namespace {

constexpr double kSize = 1000.0;
constexpr double kMargin = 0.2 * kSize;
constexpr double kInset = 100.0;
constexpr int kInsetsPerRow = 10;

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                 "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

struct Frame {
  double x0 = 0, y0 = 0, scale = 1;

  std::pair<double, double> map(double x, double y) const {
    return {kMargin + (x - x0) * scale, kSize - kMargin - (y - y0) * scale};
  }
};

Frame fit(const EnumerationResult& r) {
  double lo_x = std::numeric_limits<double>::max(), lo_y = lo_x;
  double hi_x = std::numeric_limits<double>::lowest(), hi_y = hi_x;
  auto take = [&](const RationalPoint& p) {
    double x = p.x.convert_to<double>(), y = p.y.convert_to<double>();
    lo_x = std::min(lo_x, x), hi_x = std::max(hi_x, x);
    lo_y = std::min(lo_y, y), hi_y = std::max(hi_y, y);
  };
  for (const auto& c : r.curves)
    for (const auto& p : c.curve.curve.positions)
      if (p) take(*p);
  for (const auto& p : r.config.points)
    if (!p.on_boundary()) take(p.point);
  if (lo_x > hi_x) lo_x = lo_y = 0, hi_x = hi_y = 1;
  double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
  Frame f;
  f.scale = (kSize - 2 * kMargin) / span;
  // Center the shorter side.
  f.x0 = lo_x - (span - (hi_x - lo_x)) / 2;
  f.y0 = lo_y - (span - (hi_y - lo_y)) / 2;
  return f;
}

// Distance along (dx, dy) from (x, y) to the border of the panel.
double to_border(double x, double y, double dx, double dy) {
  double t = std::numeric_limits<double>::max();
  if (dx > 0) t = std::min(t, (kSize - x) / dx);
  if (dx < 0) t = std::min(t, -x / dx);
  if (dy > 0) t = std::min(t, (kSize - y) / dy);
  if (dy < 0) t = std::min(t, -y / dy);
  return std::max(t, 0.0);
}

void draw_curve(std::ostringstream& out, const PPTCurve& c, const Frame& f, const char* color) {
  for (int e = 0; e < c.graph.edge_count(); ++e) {
    const auto& ed = c.graph.edges[static_cast<std::size_t>(e)];
    const auto& tail = *c.positions[static_cast<std::size_t>(ed.tail)];
    auto [x1, y1] = f.map(tail.x.convert_to<double>(), tail.y.convert_to<double>());
    double x2, y2;
    if (c.graph.is_finite(ed.head)) {
      const auto& head = *c.positions[static_cast<std::size_t>(ed.head)];
      std::tie(x2, y2) = f.map(head.x.convert_to<double>(), head.y.convert_to<double>());
    } else {
      LatticePoint u = c.directions[static_cast<std::size_t>(e)].primitive;
      double dx = static_cast<double>(u.x), dy = -static_cast<double>(u.y);
      double t = to_border(x1, y1, dx, dy);
      x2 = x1 + t * dx, y2 = y1 + t * dy;
    }
    const std::int64_t w = c.weight(e);
    out << "<path d=\"M " << num(x1) << ' ' << num(y1) << " L " << num(x2) << ' ' << num(y2) << "\" stroke=\"" << color
        << "\" stroke-width=\"" << 1.5 * static_cast<double>(w) << "\" fill=\"none\"/>\n";
    if (w > 1)
      out << "<text x=\"" << num((x1 + x2) / 2) << "\" y=\"" << num((y1 + y2) / 2) << "\" font-size=\"14\" fill=\"" << color
          << "\">" << w << "</text>\n";
  }
}

void draw_inset(std::ostringstream& out, const DualSubdivision& s, std::size_t index, const char* color) {
  const double ox = static_cast<double>(index % kInsetsPerRow) * kInset;
  const double oy = kSize + static_cast<double>(index / kInsetsPerRow) * kInset;
  std::int64_t lo_x = 0, lo_y = 0, hi_x = 1, hi_y = 1;
  bool first = true;
  for (auto v : s.polygon.vertices()) {
    if (first) lo_x = hi_x = v.x, lo_y = hi_y = v.y, first = false;
    lo_x = std::min(lo_x, v.x), hi_x = std::max(hi_x, v.x);
    lo_y = std::min(lo_y, v.y), hi_y = std::max(hi_y, v.y);
  }
  const double span = static_cast<double>(std::max<std::int64_t>({hi_x - lo_x, hi_y - lo_y, 1}));
  const double k = (kInset - 20) / span;
  auto map = [&](LatticePoint p) {
    return std::pair<double, double>{ox + 10 + static_cast<double>(p.x - lo_x) * k,
                                     oy + kInset - 10 - static_cast<double>(p.y - lo_y) * k};
  };
  for (const auto& cell : s.cells) {
    out << "<polygon points=\"";
    bool sep = false;
    for (auto v : cell.vertices()) {
      auto [x, y] = map(v);
      out << (sep ? " " : "") << num(x) << ',' << num(y);
      sep = true;
    }
    out << "\" stroke=\"" << color << "\" stroke-width=\"1\" fill=\"none\"/>\n";
  }
}

}  // namespace

std::string render_svg(const EnumerationResult& r) {
  const Frame f = fit(r);
  const std::size_t rows = (r.curves.size() + kInsetsPerRow - 1) / kInsetsPerRow;
  const double height = kSize + static_cast<double>(rows) * kInset;
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << height << "\" viewBox=\"0 0 "
      << kSize << ' ' << height << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << kSize << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < r.curves.size(); ++i)
    draw_curve(out, r.curves[i].curve.curve, f, kPalette[i % kPalette.size()]);
  for (const auto& p : r.config.points) {
    if (p.on_boundary()) continue;
    auto [x, y] = f.map(p.point.x.convert_to<double>(), p.point.y.convert_to<double>());
    out << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"4\" fill=\"black\"/>\n";
  }
  for (std::size_t i = 0; i < r.curves.size(); ++i)
    draw_inset(out, dual_subdivision(push_forward(r.curves[i].curve.curve)), i, kPalette[i % kPalette.size()]);
  out << "</svg>\n";
  return out.str();
}

std::size_t svg_path_count(const EnumerationResult& r) {
  std::size_t n = 0;
  for (const auto& c : r.curves) n += c.curve.curve.graph.edges.size();
  return n;
}

}  // namespace tropicount::cli
