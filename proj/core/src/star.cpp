#include "tropicount/duality.hpp"
#include "tropicount/error.hpp"
#include "tropicount/weights.hpp"
#include "trees.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace tropicount {

std::vector<WeightedDirection> star_ends(const MarkedCurve& m, int v, const Orientation& o) {
  const PPTCurve& c = m.curve;
  int out = o.outgoing.at(static_cast<std::size_t>(v));
  if (out < 0) throw HypothesisError("orientation", "vertex " + std::to_string(v) + " has no emanating edge");
  std::vector<WeightedDirection> rest;
  const auto inc = c.graph.incidence();
  for (int e : inc.at(static_cast<std::size_t>(v)))
    if (e != out) rest.push_back(c.outgoing_direction(e, v));
  std::map<LatticePoint, int> classes;
  for (const auto& d : rest) ++classes[d.primitive];
  if (classes.size() != 2)
    throw HypothesisError("M5", "vertex " + std::to_string(v) + " has " + std::to_string(classes.size()) +
                                    " incoming directions, expected 2");
  std::sort(rest.begin(), rest.end());
  rest.push_back(c.outgoing_direction(out, v));
  return rest;
}

namespace {

// Sum of leaf vectors behind `to` as seen from `from`.
LatticePoint flow(const std::vector<std::vector<int>>& adj, const std::vector<LatticePoint>& leaf, int from, int to) {
  if (to < static_cast<int>(leaf.size())) return leaf[static_cast<std::size_t>(to)];
  LatticePoint s;
  for (int n : adj[static_cast<std::size_t>(to)])
    if (n != from) s = s + flow(adj, leaf, to, n);
  return s;
}

bool spans(const std::vector<LatticePoint>& vs) {
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (cross(vs[i], vs[j]) != 0) return true;
  return false;
}

}  // namespace

StarDeformation deform_star(const RationalPoint& center, const std::vector<WeightedDirection>& ends,
                            const WeightOptions& options) {
  const int k = static_cast<int>(ends.size());
  if (k < 3) throw Error("deform_star: a star needs at least three ends");
  std::vector<LatticePoint> leaf;
  for (const auto& d : ends) leaf.push_back(d.vector());
  LatticePoint total;
  for (auto p : leaf) total = total + p;
  if (!is_zero(total)) throw Error("deform_star: ends are not balanced");

  Configuration cfg;
  cfg.polygon = polygon_of_outgoing(leaf);
  // Perturbations stay far below the unit spacing of the anchors.
  const Rational eps = Rational(1) / Rational(Integer(1) << (k + 6));

  for (int attempt = 0; attempt <= options.retries; ++attempt) {
    const std::uint64_t seed = options.seed + static_cast<std::uint64_t>(attempt);
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(k));
    auto draw = [&] { return Rational(static_cast<std::int64_t>(rng() % 2049) - 1024, 1024); };
    cfg.points.clear();
    for (int i = 0; i + 1 < k; ++i) {
      RationalPoint y = center + RationalPoint(ends[static_cast<std::size_t>(i)].primitive);
      cfg.points.push_back(ConfigPoint::interior(y + eps * RationalPoint(draw(), draw())));
    }

    StarDeformation out;
    out.seed_used = seed;
    bool degenerate = false;
    detail::labeled_trees(k, true, [&](const detail::TreeEdges& edges, int vertex_count) {
      if (degenerate) return;
      std::vector<std::vector<int>> adj(static_cast<std::size_t>(vertex_count));
      for (auto [a, b] : edges) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
      }
      CombinatorialType t;
      t.graph.vertices.assign(static_cast<std::size_t>(vertex_count), VertexKind::Finite);
      for (int i = 0; i < k; ++i) t.graph.vertices[static_cast<std::size_t>(i)] = VertexKind::AtInfinity;
      std::vector<int> leaf_edge(static_cast<std::size_t>(k), -1);
      for (auto [a, b] : edges) {
        LatticePoint vec = flow(adj, leaf, a, b);
        if (is_zero(vec)) return;
        if (b < k) leaf_edge[static_cast<std::size_t>(b)] = t.graph.edge_count();
        t.graph.edges.push_back({a, b, Length::infinite()});
        t.directions.push_back(b < k ? ends[static_cast<std::size_t>(b)] : primitive_decompose(vec));
      }
      for (int p = k; p < vertex_count; ++p) {
        std::vector<LatticePoint> around;
        for (int n : adj[static_cast<std::size_t>(p)]) around.push_back(flow(adj, leaf, p, n));
        if (!spans(around)) return;
      }
      for (int i = 0; i + 1 < k; ++i) t.marks.push_back({-1, leaf_edge[static_cast<std::size_t>(i)]});
      auto res = solve_type(t, cfg);
      if (res.status == SolveStatus::Degenerate)
        degenerate = true;
      else if (res.status == SolveStatus::Solved)
        out.curves.push_back(std::move(*res.curve));
    });
    if (!degenerate) return out;
  }
  throw GenericityError("star deformation stayed degenerate after " + std::to_string(options.retries + 1) + " perturbations");
}

}  // namespace tropicount
