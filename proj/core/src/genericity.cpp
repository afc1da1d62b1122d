#include "tropicount/position.hpp"

#include "tropicount/error.hpp"
#include "trees.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace tropicount {

bool marks_exhaust_preimages(const MarkedCurve& m, const Configuration& cfg) {
  const PPTCurve& c = m.curve;
  if (m.marks.size() != cfg.points.size()) return false;
  std::vector<GraphPoint> marks;
  for (const auto& mk : m.marks) marks.push_back(normalize(c, mk.point));
  auto is_mark = [&](const GraphPoint& p) { return std::find(marks.begin(), marks.end(), p) != marks.end(); };
  auto sides = cfg.polygon.sides();
  for (std::size_t i = 0; i < cfg.points.size(); ++i) {
    const auto& pt = cfg.points[i];
    if (pt.on_boundary()) {
      const auto& side = sides.at(static_cast<std::size_t>(*pt.side));
      for (int e : c.ends()) {
        if (c.directions[static_cast<std::size_t>(e)].primitive != side.normal) continue;
        if (boundary_parameter(side.normal, c.position(c.graph.edges[static_cast<std::size_t>(e)].tail)) != pt.parameter) continue;
        if (!is_mark(GraphPoint::at_vertex(c.graph.edges[static_cast<std::size_t>(e)].head))) return false;
      }
      continue;
    }
    if (marks[i].is_vertex() && !c.graph.is_finite(marks[i].vertex)) return false;
    if (!(image(c, marks[i]) == pt.point)) return false;
    for (int v : c.finite_vertices())
      if (c.position(v) == pt.point && !is_mark(GraphPoint::at_vertex(v))) return false;
    for (int e = 0; e < c.graph.edge_count(); ++e) {
      const auto& d = c.directions[static_cast<std::size_t>(e)];
      RationalPoint rel = pt.point - c.position(c.graph.edges[static_cast<std::size_t>(e)].tail);
      if (cross(d.primitive, rel) != 0) continue;
      Rational t = dot(d.primitive, rel) / Rational(dot(d.primitive, d.primitive) * d.weight);
      if (t <= 0) continue;
      if (!c.is_end(e) && t >= c.graph.edges[static_cast<std::size_t>(e)].length.value()) continue;
      if (!is_mark(GraphPoint::on_edge(e, t))) return false;
    }
  }
  return true;
}


GenericityResult check_delta_generic(const WeightedConfiguration& wcfg, const LatticePolygon& delta, std::size_t budget) {
  GenericityResult result;
  const auto& pts = wcfg.base.points;
  if (wcfg.weights.size() != pts.size()) throw Error("check_delta_generic: one weight per point is required");
  auto lp = lattice_points(delta);
  std::vector<LatticePoint> all = lp.interior;
  all.insert(all.end(), lp.boundary.begin(), lp.boundary.end());
  std::set<LatticePoint> dirs;
  std::int64_t max_weight = 1;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (i == j) continue;
      auto d = primitive_decompose(all[j] - all[i]);
      dirs.insert(rotate_ccw(d.primitive));
      max_weight = std::max(max_weight, d.weight);
    }
  std::vector<LatticePoint> vectors;
  for (auto d : dirs)
    for (std::int64_t w = 1; w <= max_weight; ++w) vectors.push_back(w * d);
  const int max_ends = static_cast<int>(lp.boundary.size());
  bool degenerate = false;
  bool exhausted = false;

  auto try_candidate = [&](const std::vector<std::pair<int, int>>& edges, int vertex_count, int m,
                           const std::vector<LatticePoint>& leaf_vec, const std::vector<int>& point_of_leaf) {
    if (result.examined >= budget) {
      exhausted = true;
      return true;
    }
    ++result.examined;
    CombinatorialType t;
    t.graph.vertices.assign(static_cast<std::size_t>(vertex_count), VertexKind::Finite);
    for (int l = 0; l < m; ++l) t.graph.vertices[static_cast<std::size_t>(l)] = VertexKind::AtInfinity;
    // vector carried by each edge toward its second endpoint, by summing leaves below it
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(vertex_count));
    for (std::size_t i = 0; i < edges.size(); ++i) {
      adj[static_cast<std::size_t>(edges[i].first)].push_back(static_cast<int>(i));
      adj[static_cast<std::size_t>(edges[i].second)].push_back(static_cast<int>(i));
    }
    std::function<LatticePoint(int, int)> flow = [&](int v, int from_edge) -> LatticePoint {
      if (v < m) return leaf_vec[static_cast<std::size_t>(v)];
      LatticePoint s{};
      for (int e : adj[static_cast<std::size_t>(v)]) {
        if (e == from_edge) continue;
        auto [a, b] = edges[static_cast<std::size_t>(e)];
        s = s + flow(a == v ? b : a, e);
      }
      return s;
    };
    for (std::size_t i = 0; i < edges.size(); ++i) {
      auto [a, b] = edges[i];
      LatticePoint vec = flow(b, static_cast<int>(i));  // outgoing from a toward b
      if (is_zero(vec)) return false;
      auto wd = primitive_decompose(vec);
      if (!dirs.count(wd.primitive)) return false;
      int tail = a, head = b;
      if (b >= m && a < m) std::swap(tail, head), wd.primitive = -wd.primitive;
      t.graph.edges.push_back({tail, head, Length::infinite()});
      t.directions.push_back(wd);
    }
    for (int v = m; v < vertex_count; ++v) {
      bool spans = false;
      const auto& ev = adj[static_cast<std::size_t>(v)];
      for (std::size_t i = 0; i < ev.size() && !spans; ++i)
        for (std::size_t j = i + 1; j < ev.size() && !spans; ++j)
          spans = cross(t.directions[static_cast<std::size_t>(ev[i])].primitive,
                        t.directions[static_cast<std::size_t>(ev[j])].primitive) != 0;
      if (!spans) return false;
    }
    Configuration sub;
    sub.polygon = delta;
    for (int l = 0; l < m; ++l) {
      const auto& p = pts[static_cast<std::size_t>(point_of_leaf[static_cast<std::size_t>(l)])];
      int e = adj[static_cast<std::size_t>(l)].front();
      MarkPlacement pl;
      if (p.on_boundary())
        pl.vertex = l;
      else
        pl.edge = e;
      t.marks.push_back(pl);
      sub.points.push_back(p);
    }
    auto outcome = solve_type(t, sub, nullptr, false);
    if (outcome.status == SolveStatus::Degenerate) degenerate = true;
    if (outcome.status == SolveStatus::Solved) {
      result.verdict = GenericityVerdict::Witness;
      result.witness = outcome.curve;
      result.witness_weights.assign(pts.size(), 0);
      for (int l = 0; l < m; ++l) ++result.witness_weights[static_cast<std::size_t>(point_of_leaf[static_cast<std::size_t>(l)])];
      return true;
    }
    return false;
  };

  for (int m = 3; m <= max_ends; ++m) {
    // assignments of leaves to points, nondecreasing, within the point weights
    std::vector<std::vector<int>> assignments;
    std::vector<int> cur;
    std::function<void(int)> assign = [&](int from) {
      if (static_cast<int>(cur.size()) == m) {
        assignments.push_back(cur);
        return;
      }
      for (int p = from; p < static_cast<int>(pts.size()); ++p) {
        if (std::count(cur.begin(), cur.end(), p) >= wcfg.weights[static_cast<std::size_t>(p)]) continue;
        cur.push_back(p);
        assign(p);
        cur.pop_back();
      }
    };
    assign(0);
    if (assignments.empty()) continue;
    bool stop = false;
    detail::labeled_trees(m, false, [&](const std::vector<std::pair<int, int>>& edges, int vertex_count) {
      if (stop) return;
      std::vector<LatticePoint> leaf_vec(static_cast<std::size_t>(m));
      std::function<void(int, LatticePoint)> choose = [&](int l, LatticePoint sum) {
        if (stop) return;
        if (l == m - 1) {
          LatticePoint last = -sum;
          if (is_zero(last) || std::find(vectors.begin(), vectors.end(), last) == vectors.end()) return;
          leaf_vec[static_cast<std::size_t>(l)] = last;
          for (const auto& a : assignments)
            if (try_candidate(edges, vertex_count, m, leaf_vec, a)) {
              stop = true;
              return;
            }
          return;
        }
        for (const auto& v : vectors) {
          leaf_vec[static_cast<std::size_t>(l)] = v;
          choose(l + 1, sum + v);
          if (stop) return;
        }
      };
      choose(0, LatticePoint{});
    });
    if (stop) break;
  }
  if (result.verdict == GenericityVerdict::Witness) return result;
  result.verdict = (exhausted || degenerate) ? GenericityVerdict::Inconclusive : GenericityVerdict::Generic;
  return result;
}

}  // namespace tropicount
