#include "tropicount/duality.hpp"

#include "tropicount/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tropicount {

namespace {

// Plane nu(w) = <gradient, w> + constant through three lifted points.
struct Plane {
  RationalPoint gradient;
  Rational constant;
  friend bool operator<(const Plane& a, const Plane& b) {
    if (!(a.gradient == b.gradient)) return a.gradient < b.gradient;
    return a.constant < b.constant;
  }
};

Tropicalization one_dimensional(const std::vector<std::pair<LatticePoint, Rational>>& pts) {
  LatticePoint dir = primitive_decompose(pts.back().first - pts.front().first).primitive;
  std::vector<std::pair<LatticePoint, Rational>> sorted = pts;
  std::sort(sorted.begin(), sorted.end(),
            [&](const auto& a, const auto& b) { return dot(dir, a.first) < dot(dir, b.first); });
  // Lower convex chain of (position along dir, nu).
  std::vector<std::pair<LatticePoint, Rational>> chain;
  for (const auto& p : sorted) {
    while (chain.size() >= 2) {
      const auto& a = chain[chain.size() - 2];
      const auto& b = chain.back();
      Rational ta = dot(dir, a.first), tb = dot(dir, b.first), tp = dot(dir, p.first);
      // drop b unless it lies strictly below the segment from a to p
      if ((b.second - a.second) * (tp - ta) >= (p.second - a.second) * (tb - ta))
        chain.pop_back();
      else
        break;
    }
    chain.push_back(p);
  }
  Tropicalization out;
  for (const auto& [w, v] : chain) out.subdivision.nu.values[w] = v;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    LatticePoint d = chain[i + 1].first - chain[i].first;
    auto wd = primitive_decompose(d);
    // <d, x> = c_i - c_{i+1} with c = -nu.
    Rational rhs = chain[i + 1].second - chain[i].second;
    EPTEdge e;
    e.kind = EPTEdge::Kind::Line;
    e.anchor = (rhs / Rational(dot(d, d))) * d;
    LatticePoint u = rotate_ccw(wd.primitive);
    e.direction = std::max(u, -u);
    e.weight = wd.weight;
    out.curve.edges.push_back(e);
    out.subdivision.cells.push_back(LatticePolygon::hull({chain[i].first, chain[i + 1].first}));
  }
  out.subdivision.polygon = LatticePolygon::hull({sorted.front().first, sorted.back().first});
  out.subdivision.nu.carrier = out.subdivision.polygon;
  return out;
}

}  // namespace

Tropicalization tropicalize(const ValuatedPolynomial& p) {
  std::vector<std::pair<LatticePoint, Rational>> pts(p.valuation.begin(), p.valuation.end());
  if (pts.size() <= 1) throw Error("curve is empty");
  std::vector<LatticePoint> support;
  for (const auto& [w, v] : pts) support.push_back(w);
  LatticePolygon hull = LatticePolygon::hull(support);
  if (hull.dimension() < 2) return one_dimensional(pts);

  std::map<Plane, std::vector<LatticePoint>> faces;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        LatticePoint a = pts[i].first, d1 = pts[j].first - a, d2 = pts[k].first - a;
        Rational det = cross(d1, d2);
        if (det == 0) continue;
        Rational g1 = pts[j].second - pts[i].second, g2 = pts[k].second - pts[i].second;
        Plane pl{RationalPoint((g1 * d2.y - g2 * d1.y) / det, (d1.x * g2 - d2.x * g1) / det), 0};
        pl.constant = pts[i].second - dot(a, pl.gradient);
        if (faces.count(pl)) continue;
        std::vector<LatticePoint> on;
        bool lower = true;
        for (const auto& [w, v] : pts) {
          Rational l = dot(w, pl.gradient) + pl.constant;
          if (l > v) {
            lower = false;
            break;
          }
          if (l == v) on.push_back(w);
        }
        if (lower) faces.emplace(pl, std::move(on));
      }

  Tropicalization out;
  auto& sub = out.subdivision;
  sub.polygon = hull;
  sub.nu.carrier = hull;
  std::map<std::pair<LatticePoint, LatticePoint>, std::vector<int>> side_owners;
  for (const auto& [pl, on] : faces) {
    LatticePolygon cell = LatticePolygon::hull(on);
    int idx = static_cast<int>(out.curve.vertices.size());
    out.curve.vertices.push_back(pl.gradient);
    for (const auto& w : cell.vertices()) sub.nu.values[w] = p.valuation.at(w);
    for (const auto& sd : cell.sides()) side_owners[{std::min(sd.start, sd.end), std::max(sd.start, sd.end)}].push_back(idx);
    sub.cells.push_back(std::move(cell));
  }
  for (const auto& [ends, owners] : side_owners) {
    auto wd = primitive_decompose(ends.second - ends.first);
    EPTEdge e;
    e.weight = wd.weight;
    if (owners.size() == 2) {
      int a = owners[0], b = owners[1];
      const auto& pa = out.curve.vertices[static_cast<std::size_t>(a)];
      const auto& pb = out.curve.vertices[static_cast<std::size_t>(b)];
      if (pb < pa) std::swap(a, b);
      e.kind = EPTEdge::Kind::Segment;
      e.from = a;
      e.to = b;
      e.direction = primitive_of(out.curve.vertices[static_cast<std::size_t>(b)] - out.curve.vertices[static_cast<std::size_t>(a)]);
    } else if (owners.size() == 1) {
      LatticePoint u = rotate_ccw(wd.primitive);
      const auto& cell = sub.cells[static_cast<std::size_t>(owners[0])];
      // exterior side: the rest of the cell lies on the other side of the normal
      for (const auto& v : cell.vertices())
        if (dot(u, v - ends.first) > 0) {
          u = -u;
          break;
        }
      e.kind = EPTEdge::Kind::Ray;
      e.from = owners[0];
      e.direction = u;
    } else {
      throw Error("tropicalize: subdivision side shared by more than two cells");
    }
    out.curve.edges.push_back(e);
  }
  return out;
}

std::string canonical_ept(const EPTCurve& t) {
  RationalPoint base;
  if (!t.vertices.empty()) base = *std::min_element(t.vertices.begin(), t.vertices.end());
  auto pt = [&](const RationalPoint& p) {
    RationalPoint q = p - base;
    return "(" + to_string(q.x) + "," + to_string(q.y) + ")";
  };
  std::vector<std::string> parts;
  for (const auto& e : t.edges) {
    std::string w = "w" + std::to_string(e.weight);
    switch (e.kind) {
      case EPTEdge::Kind::Segment: {
        auto a = t.vertices.at(static_cast<std::size_t>(e.from)), b = t.vertices.at(static_cast<std::size_t>(e.to));
        if (b < a) std::swap(a, b);
        parts.push_back("S" + pt(a) + pt(b) + w);
        break;
      }
      case EPTEdge::Kind::Ray:
        parts.push_back("R" + pt(t.vertices.at(static_cast<std::size_t>(e.from))) + "(" + std::to_string(e.direction.x) +
                        "," + std::to_string(e.direction.y) + ")" + w);
        break;
      case EPTEdge::Kind::Line: {
        LatticePoint u = std::max(e.direction, -e.direction);
        parts.push_back("L(" + std::to_string(u.x) + "," + std::to_string(u.y) + ")" + to_string(cross(u, e.anchor - base)) + w);
        break;
      }
    }
  }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) out += p + ";";
  return out;
}

}  // namespace tropicount
