#include "tropicount/curve.hpp"

#include "tropicount/error.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace tropicount {

namespace {

struct Piece {
  RationalPoint start;
  LatticePoint u;
  std::optional<Rational> extent;  // parameter range [0, extent] in units of u; none for a ray
  std::int64_t weight;
};

bool in_range(const Piece& p, const Rational& s) { return s >= 0 && (!p.extent || s <= *p.extent); }

// Parameter of q along p when q lies on the line of p.
std::optional<Rational> param_on(const Piece& p, const RationalPoint& q) {
  RationalPoint d = q - p.start;
  if (cross(p.u, d) != 0) return std::nullopt;
  Rational s = dot(p.u, d) / Rational(dot(p.u, p.u));
  if (!in_range(p, s)) return std::nullopt;
  return s;
}

std::vector<int> incident(const EPTCurve& t, int v, const std::vector<bool>& alive) {
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(t.edges.size()); ++e) {
    if (!alive[static_cast<std::size_t>(e)]) continue;
    const auto& ed = t.edges[static_cast<std::size_t>(e)];
    if (ed.kind == EPTEdge::Kind::Line) continue;
    if (ed.from == v || (ed.kind == EPTEdge::Kind::Segment && ed.to == v)) out.push_back(e);
  }
  return out;
}

LatticePoint outgoing_at(const EPTEdge& e, int v) { return e.from == v ? e.direction : -e.direction; }

}  // namespace

EPTCurve push_forward(const PPTCurve& c) {
  check_structure(c);
  std::vector<Piece> pieces;
  for (int e = 0; e < c.graph.edge_count(); ++e) {
    const auto& ed = c.graph.edges[static_cast<std::size_t>(e)];
    const auto& d = c.directions[static_cast<std::size_t>(e)];
    Piece p{c.position(ed.tail), d.primitive, std::nullopt, d.weight};
    if (!c.is_end(e)) p.extent = ed.length.value() * d.weight;
    pieces.push_back(std::move(p));
  }

  std::map<std::pair<RationalPoint, RationalPoint>, std::int64_t> segments;
  std::map<std::pair<RationalPoint, LatticePoint>, std::int64_t> rays;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    std::vector<Rational> cuts{Rational(0)};
    if (p.extent) cuts.push_back(*p.extent);
    for (std::size_t j = 0; j < pieces.size(); ++j) {
      if (j == i) continue;
      const Piece& q = pieces[j];
      std::int64_t den = cross(p.u, q.u);
      if (den != 0) {
        RationalPoint w = q.start - p.start;
        Rational s = cross(w, RationalPoint(q.u)) / Rational(den);
        Rational t = cross(w, RationalPoint(p.u)) / Rational(den);
        if (in_range(p, s) && in_range(q, t)) cuts.push_back(s);
        continue;
      }
      if (auto s = param_on(p, q.start)) cuts.push_back(*s);
      if (q.extent)
        if (auto s = param_on(p, q.start + *q.extent * q.u)) cuts.push_back(*s);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      RationalPoint a = p.start + cuts[k] * p.u, b = p.start + cuts[k + 1] * p.u;
      if (b < a) std::swap(a, b);
      segments[{a, b}] += p.weight;
    }
    if (!p.extent) rays[{p.start + cuts.back() * p.u, p.u}] += p.weight;
  }

  EPTCurve t;
  std::map<RationalPoint, int> index;
  auto vertex = [&](const RationalPoint& x) {
    auto [it, fresh] = index.emplace(x, static_cast<int>(t.vertices.size()));
    if (fresh) t.vertices.push_back(x);
    return it->second;
  };
  for (const auto& [ab, w] : segments) {
    EPTEdge e;
    e.kind = EPTEdge::Kind::Segment;
    e.from = vertex(ab.first);
    e.to = vertex(ab.second);
    e.direction = primitive_of(ab.second - ab.first);
    e.weight = w;
    t.edges.push_back(e);
  }
  for (const auto& [au, w] : rays) {
    EPTEdge e;
    e.kind = EPTEdge::Kind::Ray;
    e.from = vertex(au.first);
    e.direction = au.second;
    e.weight = w;
    t.edges.push_back(e);
  }

  // Dissolve points where the image continues straight with unchanged weight.
  std::vector<bool> edge_alive(t.edges.size(), true), vertex_alive(t.vertices.size(), true);
  for (bool changed = true; changed;) {
    changed = false;
    for (int v = 0; v < static_cast<int>(t.vertices.size()); ++v) {
      if (!vertex_alive[static_cast<std::size_t>(v)]) continue;
      auto inc = incident(t, v, edge_alive);
      if (inc.size() != 2) continue;
      EPTEdge a = t.edges[static_cast<std::size_t>(inc[0])], b = t.edges[static_cast<std::size_t>(inc[1])];
      LatticePoint da = outgoing_at(a, v), db = outgoing_at(b, v);
      if (!(da == -db) || a.weight != b.weight) continue;
      EPTEdge merged;
      merged.weight = a.weight;
      bool ray_a = a.kind == EPTEdge::Kind::Ray, ray_b = b.kind == EPTEdge::Kind::Ray;
      if (ray_a && ray_b) {
        merged.kind = EPTEdge::Kind::Line;
        merged.anchor = t.vertices[static_cast<std::size_t>(v)];
        merged.direction = std::max(da, db);
      } else if (ray_a || ray_b) {
        const EPTEdge& seg = ray_a ? b : a;
        const EPTEdge& ray = ray_a ? a : b;
        merged.kind = EPTEdge::Kind::Ray;
        merged.from = seg.from == v ? seg.to : seg.from;
        merged.direction = ray.direction;
      } else {
        int x = a.from == v ? a.to : a.from, y = b.from == v ? b.to : b.from;
        if (t.vertices[static_cast<std::size_t>(y)] < t.vertices[static_cast<std::size_t>(x)]) std::swap(x, y);
        merged.kind = EPTEdge::Kind::Segment;
        merged.from = x;
        merged.to = y;
        merged.direction = primitive_of(t.vertices[static_cast<std::size_t>(y)] - t.vertices[static_cast<std::size_t>(x)]);
      }
      edge_alive[static_cast<std::size_t>(inc[0])] = false;
      edge_alive[static_cast<std::size_t>(inc[1])] = false;
      vertex_alive[static_cast<std::size_t>(v)] = false;
      t.edges.push_back(merged);
      edge_alive.push_back(true);
      changed = true;
    }
  }

  EPTCurve out;
  std::vector<int> remap(t.vertices.size(), -1);
  for (std::size_t v = 0; v < t.vertices.size(); ++v) {
    if (!vertex_alive[v]) continue;
    remap[v] = static_cast<int>(out.vertices.size());
    out.vertices.push_back(t.vertices[v]);
  }
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    if (!edge_alive[e]) continue;
    EPTEdge ed = t.edges[e];
    if (ed.from >= 0) ed.from = remap[static_cast<std::size_t>(ed.from)];
    if (ed.to >= 0) ed.to = remap[static_cast<std::size_t>(ed.to)];
    out.edges.push_back(ed);
  }
  return out;
}

ValidationReport validate_ept(const EPTCurve& t) {
  ValidationReport report;
  const int n = static_cast<int>(t.vertices.size());
  std::vector<LatticePoint> sum(t.vertices.size());
  std::vector<int> valency(t.vertices.size(), 0);
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    const auto& e = t.edges[i];
    const std::string where = "edge " + std::to_string(i);
    if (e.weight < 1) report.add("ept-weight", where, "weight must be positive");
    if (is_zero(e.direction) || primitive_decompose(e.direction).weight != 1) {
      report.add("ept-geometry", where, "direction is not primitive");
      continue;
    }
    if (e.kind == EPTEdge::Kind::Line) continue;
    if (e.from < 0 || e.from >= n) {
      report.add("ept-geometry", where, "start vertex out of range");
      continue;
    }
    sum[static_cast<std::size_t>(e.from)] = sum[static_cast<std::size_t>(e.from)] + e.weight * e.direction;
    ++valency[static_cast<std::size_t>(e.from)];
    if (e.kind == EPTEdge::Kind::Segment) {
      if (e.to < 0 || e.to >= n) {
        report.add("ept-geometry", where, "end vertex out of range");
        continue;
      }
      RationalPoint d = t.vertices[static_cast<std::size_t>(e.to)] - t.vertices[static_cast<std::size_t>(e.from)];
      if (cross(e.direction, d) != 0 || dot(e.direction, d) <= 0)
        report.add("ept-geometry", where, "segment does not run along its direction");
      sum[static_cast<std::size_t>(e.to)] = sum[static_cast<std::size_t>(e.to)] - e.weight * e.direction;
      ++valency[static_cast<std::size_t>(e.to)];
    }
  }
  for (int v = 0; v < n; ++v) {
    if (valency[static_cast<std::size_t>(v)] == 0) report.add("ept-isolated", "vertex " + std::to_string(v), "no incident edge");
    if (!is_zero(sum[static_cast<std::size_t>(v)]))
      report.add("ept-balancing", "vertex " + std::to_string(v), "weighted directions do not sum to zero");
  }
  return report;
}

}  // namespace tropicount
