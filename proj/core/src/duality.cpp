#include "tropicount/duality.hpp"

#include "tropicount/error.hpp"

#include <algorithm>
#include <deque>
#include <optional>

namespace tropicount {

LatticePolygon polygon_of_outgoing(const std::vector<LatticePoint>& outgoing) {
  std::vector<LatticePoint> sides;
  for (const auto& v : outgoing) sides.push_back(rotate_ccw(v));
  return polygon_from_edge_vectors(std::move(sides));
}

LatticePolygon vertex_polygon(const PPTCurve& c, int v) {
  if (!c.graph.is_finite(v)) throw Error("vertex " + std::to_string(v) + " is not finite");
  std::vector<LatticePoint> out;
  const auto inc = c.graph.incidence();
  for (int e : inc.at(static_cast<std::size_t>(v))) out.push_back(c.outgoing(e, v));
  return polygon_of_outgoing(out);
}

LatticePolygon newton_polygon(const std::vector<WeightedDirection>& degree) {
  std::vector<LatticePoint> out;
  for (const auto& d : degree) out.push_back(d.vector());
  return polygon_of_outgoing(out).canonical();
}

LatticePolygon newton_polygon(const PPTCurve& c) { return newton_polygon(degree(c)); }

namespace {

struct Spoke {
  int edge;
  LatticePoint dir;  // primitive, outgoing
  std::int64_t weight;
  int other;  // far vertex for segments, -1 for rays
};

std::vector<std::vector<Spoke>> spokes(const EPTCurve& t) {
  std::vector<std::vector<Spoke>> out(t.vertices.size());
  for (int e = 0; e < static_cast<int>(t.edges.size()); ++e) {
    const auto& ed = t.edges[static_cast<std::size_t>(e)];
    if (ed.kind == EPTEdge::Kind::Line) continue;
    bool seg = ed.kind == EPTEdge::Kind::Segment;
    out[static_cast<std::size_t>(ed.from)].push_back({e, ed.direction, ed.weight, seg ? ed.to : -1});
    if (seg) out[static_cast<std::size_t>(ed.to)].push_back({e, -ed.direction, ed.weight, ed.from});
  }
  return out;
}

Rational dotq(LatticePoint a, const RationalPoint& b) { return dot(a, b); }

DualSubdivision lines_only(const EPTCurve& t) {
  struct Line {
    Rational offset;
    LatticePoint u;
    RationalPoint anchor;
    std::int64_t w;
  };
  std::vector<Line> lines;
  for (const auto& e : t.edges) {
    if (e.kind != EPTEdge::Kind::Line) throw Error("dual_subdivision: rays or segments without vertices");
    LatticePoint u = std::max(e.direction, -e.direction);
    if (!lines.empty() && u != lines.front().u) throw Error("dual_subdivision: non-parallel lines must meet");
    lines.push_back({cross(u, e.anchor), u, e.anchor, e.weight});
  }
  if (lines.empty()) throw Error("dual_subdivision: empty curve");
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) { return a.offset < b.offset; });
  LatticePoint n = rotate_ccw(lines.front().u);
  LatticePoint omega{};
  Rational c = 0;
  DualSubdivision s;
  s.nu.values[omega] = -c;
  for (const auto& l : lines) {
    LatticePoint next = omega + l.w * n;
    c += dotq(omega - next, l.anchor);
    s.cells.push_back(LatticePolygon::hull({omega, next}));
    omega = next;
    s.nu.values[omega] = -c;
  }
  s.polygon = LatticePolygon::hull({LatticePoint{}, omega});
  LatticePoint shift = -s.polygon.min_corner();
  DualSubdivision out;
  out.polygon = s.polygon.translated(shift);
  for (const auto& cell : s.cells) out.cells.push_back(cell.translated(shift));
  for (const auto& [w, v] : s.nu.values) out.nu.values[w + shift] = v;
  out.nu.carrier = out.polygon;
  return out;
}

}  // namespace

DualSubdivision dual_subdivision(const EPTCurve& t) {
  if (!validate_ept(t).ok()) throw Error("dual_subdivision: curve is not balanced");
  if (t.vertices.empty()) return lines_only(t);
  for (const auto& e : t.edges)
    if (e.kind == EPTEdge::Kind::Line) throw Error("dual_subdivision: a line must meet the rest of the curve");

  const std::size_t n = t.vertices.size();
  auto sp = spokes(t);
  // Local cell of each vertex: side endpoints per spoke, with the first corner at the origin.
  std::vector<std::vector<std::pair<LatticePoint, LatticePoint>>> side(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto& s = sp[v];
    std::sort(s.begin(), s.end(), [](const Spoke& a, const Spoke& b) { return angle_less(a.dir, b.dir); });
    LatticePoint cur{};
    for (const auto& k : s) {
      LatticePoint next = cur + k.weight * rotate_ccw(k.dir);
      side[v].push_back({cur, next});
      cur = next;
    }
  }
  auto side_of = [&](std::size_t v, int edge) -> std::pair<LatticePoint, LatticePoint> {
    for (std::size_t i = 0; i < sp[v].size(); ++i)
      if (sp[v][i].edge == edge) return side[v][i];
    throw Error("dual_subdivision: edge missing at vertex");
  };

  std::vector<std::optional<LatticePoint>> shift(n);
  std::vector<Rational> f(n);
  shift[0] = LatticePoint{};
  f[0] = 0;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < sp[v].size(); ++i) {
      const Spoke& k = sp[v][i];
      if (k.other < 0) continue;
      auto w = static_cast<std::size_t>(k.other);
      auto [a, b] = side[v][i];
      auto [a2, b2] = side_of(w, k.edge);
      LatticePoint tw = *shift[v] + a - b2;
      if (!shift[w]) {
        shift[w] = tw;
        f[w] = f[v] + dotq(*shift[v] + a, t.vertices[w] - t.vertices[v]);
        queue.push_back(w);
      } else if (*shift[w] != tw) {
        throw Error("dual_subdivision: inconsistent cell labels");
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!shift[v]) throw Error("dual_subdivision: disconnected curve image is not supported");

  DualSubdivision s;
  std::vector<LatticePoint> all;
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<LatticePoint> labels;
    for (const auto& [a, b] : side[v]) labels.push_back(*shift[v] + a);
    for (const auto& w : labels) {
      Rational value = dotq(w, t.vertices[v]) - f[v];
      auto [it, fresh] = s.nu.values.emplace(w, value);
      if (!fresh && it->second != value) throw Error("dual_subdivision: inconsistent Legendre values");
    }
    all.insert(all.end(), labels.begin(), labels.end());
    s.cells.push_back(LatticePolygon::hull(std::move(labels)));
  }
  s.polygon = LatticePolygon::hull(all);
  LatticePoint to_origin = -s.polygon.min_corner();
  DualSubdivision out;
  out.polygon = s.polygon.translated(to_origin);
  for (const auto& cell : s.cells) out.cells.push_back(cell.translated(to_origin));
  for (const auto& [w, value] : s.nu.values) out.nu.values[w + to_origin] = value;
  out.nu.carrier = out.polygon;
  return out;
}

namespace {

struct Affine {
  RationalPoint gradient;
  Rational constant;
  Rational at(LatticePoint w) const { return dotq(w, gradient) + constant; }
};

std::optional<Affine> fit(const LatticePolygon& cell, const PLFunction& nu, ValidationReport& report,
                          const std::string& where) {
  const auto& vs = cell.vertices();
  for (const auto& v : vs)
    if (!nu.values.count(v)) {
      report.add("nu-missing", where, "no value recorded at a cell vertex");
      return std::nullopt;
    }
  if (cell.dimension() != 2) return std::nullopt;
  LatticePoint p = vs[0], q = vs[1], r = vs[2];
  Rational fp = nu.values.at(p), fq = nu.values.at(q), fr = nu.values.at(r);
  LatticePoint d1 = q - p, d2 = r - p;
  Rational det = cross(d1, d2);
  Rational g1 = fq - fp, g2 = fr - fp;
  Affine a;
  a.gradient = RationalPoint((g1 * d2.y - g2 * d1.y) / det, (d1.x * g2 - d2.x * g1) / det);
  a.constant = fp - dotq(p, a.gradient);
  for (const auto& v : vs)
    if (a.at(v) != nu.values.at(v)) report.add("nu-affine", where, "values at the cell vertices are not affine");
  return a;
}

}  // namespace

ValidationReport verify_duality(const EPTCurve& t, const DualSubdivision& s) {
  ValidationReport report;
  std::int64_t total = 0;
  for (const auto& cell : s.cells) total += lattice_volume(cell);
  if (total != lattice_volume(s.polygon))
    report.add("volume", "subdivision",
               "cell volumes sum to " + std::to_string(total) + " instead of " + std::to_string(lattice_volume(s.polygon)));

  if (s.polygon.dimension() < 2) {
    std::vector<std::pair<LatticePoint, std::int64_t>> from_lines, from_cells;
    for (const auto& e : t.edges) {
      LatticePoint n = rotate_ccw(e.direction);
      from_lines.push_back({std::max(n, -n), e.weight});
    }
    for (const auto& cell : s.cells) {
      if (cell.dimension() != 1) continue;
      auto d = primitive_decompose(cell.vertices()[1] - cell.vertices()[0]);
      from_cells.push_back({std::max(d.primitive, -d.primitive), d.weight});
    }
    std::sort(from_lines.begin(), from_lines.end());
    std::sort(from_cells.begin(), from_cells.end());
    if (from_lines != from_cells) report.add("faces", "subdivision", "segments do not match the lines of the curve");
    return report;
  }

  auto sp = spokes(t);
  std::vector<int> matched(t.vertices.size(), 0);
  std::vector<Affine> pieces;
  std::vector<std::size_t> piece_cell;
  for (std::size_t i = 0; i < s.cells.size(); ++i) {
    const auto& cell = s.cells[i];
    const std::string where = "cell " + std::to_string(i);
    auto a = fit(cell, s.nu, report, where);
    if (!a) {
      if (cell.dimension() != 2) report.add("faces", where, "cell is not two-dimensional");
      continue;
    }
    pieces.push_back(*a);
    piece_cell.push_back(i);
    auto it = std::find(t.vertices.begin(), t.vertices.end(), a->gradient);
    if (it == t.vertices.end()) {
      report.add("faces", where, "gradient of nu is not a vertex of the curve");
      continue;
    }
    auto v = static_cast<std::size_t>(it - t.vertices.begin());
    ++matched[v];
    std::vector<bool> used(sp[v].size(), false);
    for (const auto& sd : cell.sides()) {
      LatticePoint d = primitive_decompose(sd.end - sd.start).primitive;
      std::int64_t len = sd.length;
      bool found = false;
      for (std::size_t k = 0; k < sp[v].size(); ++k) {
        if (rotate_ccw(sp[v][k].dir) != d) continue;
        found = true;
        used[k] = true;
        if (sp[v][k].weight != len)
          report.add("weight-length", where,
                     "dual side has lattice length " + std::to_string(len) + " but the edge has weight " +
                         std::to_string(sp[v][k].weight));
      }
      if (!found) report.add("orthogonality", where, "side is not orthogonal to any edge at the dual vertex");
    }
    for (std::size_t k = 0; k < used.size(); ++k)
      if (!used[k]) report.add("faces", where, "edge " + std::to_string(sp[v][k].edge) + " has no dual side");
  }
  for (std::size_t v = 0; v < matched.size(); ++v)
    if (matched[v] != 1)
      report.add("faces", "vertex " + std::to_string(v),
                 "is dual to " + std::to_string(matched[v]) + " cells instead of one");

  for (std::size_t p = 0; p < pieces.size(); ++p) {
    const auto& cell = s.cells[piece_cell[p]];
    for (const auto& [w, value] : s.nu.values) {
      Rational l = pieces[p].at(w);
      bool inside = cell.contains(w);
      if (l > value || (l == value) != inside)
        report.add("convexity", "cell " + std::to_string(piece_cell[p]), "nu is not strictly convex across the cell");
    }
  }

  for (const auto& sd : s.polygon.sides()) {
    std::int64_t w = 0;
    for (const auto& e : t.edges)
      if (e.kind == EPTEdge::Kind::Ray && e.direction == sd.normal) w += e.weight;
    if (w != sd.length) report.add("boundary", "side", "rays of the curve do not match the side length");
  }
  for (const auto& e : t.edges)
    if (e.kind == EPTEdge::Kind::Ray && s.polygon.side_with_normal(e.direction) < 0)
      report.add("boundary", "ray", "ray direction is not an exterior normal of the polygon");
  return report;
}

std::vector<LatticePolygon> vertex_cell_decomposition(const PPTCurve& c, const RationalPoint& point) {
  std::vector<LatticePolygon> out;
  for (int v : c.finite_vertices())
    if (c.position(v) == point) out.push_back(vertex_polygon(c, v));
  for (int e = 0; e < c.graph.edge_count(); ++e) {
    const auto& d = c.directions[static_cast<std::size_t>(e)];
    RationalPoint rel = point - c.position(c.graph.edges[static_cast<std::size_t>(e)].tail);
    if (cross(d.primitive, rel) != 0) continue;
    Rational s = dot(d.primitive, rel) / Rational(dot(d.primitive, d.primitive));
    if (s <= 0) continue;
    if (!c.is_end(e) && s >= c.graph.edges[static_cast<std::size_t>(e)].length.value() * d.weight) continue;
    out.push_back(LatticePolygon::hull({LatticePoint{}, d.weight * rotate_ccw(d.primitive)}));
  }
  if (out.empty()) throw Error("point is not on the curve image");
  return out;
}

bool is_nodal(const DualSubdivision& s) {
  for (const auto& cell : s.cells) {
    const auto& v = cell.vertices();
    if (v.size() == 3) continue;
    if (v.size() == 4 && v[0] + v[2] == v[1] + v[3]) continue;
    return false;
  }
  return true;
}

}  // namespace tropicount
