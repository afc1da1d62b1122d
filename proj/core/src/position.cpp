#include "tropicount/position.hpp"

#include "tropicount/error.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace tropicount {

int MarkLayout::total() const { return interior + std::accumulate(per_side.begin(), per_side.end(), 0); }

CombinatorialType type_of(const MarkedCurve& m) {
  CombinatorialType t;
  t.graph = m.curve.graph;
  t.directions = m.curve.directions;
  for (const auto& mk : m.marks) {
    GraphPoint p = normalize(m.curve, mk.point);
    MarkPlacement pl;
    pl.cls = mk.cls;
    pl.mt = mk.mt;
    if (p.is_vertex())
      pl.vertex = p.vertex;
    else
      pl.edge = p.edge;
    t.marks.push_back(pl);
  }
  return t;
}

Configuration stretched_config(const LatticePolygon& delta, const MarkLayout& layout, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto draw = [&](std::uint64_t n) { return static_cast<std::int64_t>(rng() % n); };
  Configuration cfg;
  cfg.polygon = delta;
  const auto& vs = delta.vertices();
  std::int64_t ymin = 0, ymax = 0, perimeter = 0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    ymin = i ? std::min(ymin, vs[i].y) : vs[i].y;
    ymax = i ? std::max(ymax, vs[i].y) : vs[i].y;
  }
  for (const auto& s : delta.sides()) perimeter += s.length;

  auto sides = delta.sides();
  for (std::size_t s = 0; s < layout.per_side.size(); ++s) {
    if (s >= sides.size()) throw Error("stretched_config: layout names a side the polygon does not have");
    for (int k = 0; k < layout.per_side[s]; ++k)
      cfg.points.push_back(ConfigPoint::boundary(static_cast<int>(s), Rational(draw(1000) + 1000 * k, 7 + draw(5))));
  }

  // Points base + s_j (1, -eps): lambda(x, y) = x - eps*y orders the lattice points of delta
  // like (x, -y) as long as eps * height < 1, and the gaps grow by at least 2^k.
  const Rational eps(1, 4 * (ymax - ymin + 1) + 3 + draw(16));
  std::int64_t k = 1;
  while ((std::int64_t{1} << k) < 8 * std::max<std::int64_t>(perimeter, 1)) ++k;
  const Rational ratio = Rational(std::int64_t{1} << k) + Rational(draw(64), 64);
  RationalPoint base(Rational(draw(97), 97), Rational(draw(89), 89));
  Rational s = 0, gap = 1 + Rational(draw(32), 32);
  for (int j = 0; j < layout.interior; ++j) {
    cfg.points.push_back(ConfigPoint::interior(base + RationalPoint(s, -eps * s)));
    s += gap;
    gap *= ratio + Rational(draw(16), 16);
  }
  return cfg;
}

namespace {

struct Columns {
  std::vector<int> vertex;  // first of two columns, -1 when not finite
  std::vector<int> length;  // per bounded edge, -1 otherwise
  std::vector<int> offset;  // per mark on an edge, -1 otherwise
  int count = 0;
};

struct LinearSystem {
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;

  std::vector<Rational>& add(int columns, Rational value) {
    rows.emplace_back(static_cast<std::size_t>(columns), Rational(0));
    rhs.push_back(std::move(value));
    return rows.back();
  }
};

bool is_univalent(const AbstractGraph& g, int v) { return !g.is_finite(v); }

Columns layout_columns(const CombinatorialType& t) {
  Columns c;
  c.vertex.assign(t.graph.vertices.size(), -1);
  c.length.assign(t.graph.edges.size(), -1);
  c.offset.assign(t.marks.size(), -1);
  for (int v = 0; v < t.graph.vertex_count(); ++v)
    if (t.graph.is_finite(v)) c.vertex[static_cast<std::size_t>(v)] = (c.count += 2) - 2;
  for (int e = 0; e < t.graph.edge_count(); ++e) {
    const auto& ed = t.graph.edges[static_cast<std::size_t>(e)];
    if (t.graph.is_finite(ed.tail) && t.graph.is_finite(ed.head)) c.length[static_cast<std::size_t>(e)] = c.count++;
  }
  for (std::size_t i = 0; i < t.marks.size(); ++i)
    if (t.marks[i].edge >= 0) c.offset[i] = c.count++;
  return c;
}

// Returns a reason when the mark and point kinds cannot match.
std::optional<std::string> build_rows(const CombinatorialType& t, const Configuration& cfg, const Columns& col,
                                      LinearSystem& sys) {
  const int n = col.count;
  for (int e = 0; e < t.graph.edge_count(); ++e) {
    int lc = col.length[static_cast<std::size_t>(e)];
    if (lc < 0) continue;
    const auto& ed = t.graph.edges[static_cast<std::size_t>(e)];
    LatticePoint m = t.directions[static_cast<std::size_t>(e)].vector();
    int h = col.vertex[static_cast<std::size_t>(ed.head)], tl = col.vertex[static_cast<std::size_t>(ed.tail)];
    auto& rx = sys.add(n, 0);
    rx[static_cast<std::size_t>(h)] += 1, rx[static_cast<std::size_t>(tl)] -= 1, rx[static_cast<std::size_t>(lc)] -= m.x;
    auto& ry = sys.add(n, 0);
    ry[static_cast<std::size_t>(h + 1)] += 1, ry[static_cast<std::size_t>(tl + 1)] -= 1, ry[static_cast<std::size_t>(lc)] -= m.y;
  }
  for (std::size_t i = 0; i < t.marks.size(); ++i) {
    const auto& mk = t.marks[i];
    const auto& pt = cfg.points[i];
    if (mk.edge >= 0) {
      if (pt.on_boundary()) return "boundary point matched to a mark inside an edge";
      const auto& ed = t.graph.edges.at(static_cast<std::size_t>(mk.edge));
      LatticePoint m = t.directions[static_cast<std::size_t>(mk.edge)].vector();
      int tl = col.vertex[static_cast<std::size_t>(ed.tail)];
      int oc = col.offset[i];
      auto& rx = sys.add(n, pt.point.x);
      rx[static_cast<std::size_t>(tl)] += 1, rx[static_cast<std::size_t>(oc)] += m.x;
      auto& ry = sys.add(n, pt.point.y);
      ry[static_cast<std::size_t>(tl + 1)] += 1, ry[static_cast<std::size_t>(oc)] += m.y;
    } else if (!is_univalent(t.graph, mk.vertex)) {
      if (pt.on_boundary()) return "boundary point matched to a finite vertex";
      int vc = col.vertex[static_cast<std::size_t>(mk.vertex)];
      sys.add(n, pt.point.x)[static_cast<std::size_t>(vc)] += 1;
      sys.add(n, pt.point.y)[static_cast<std::size_t>(vc + 1)] += 1;
    } else {
      if (!pt.on_boundary()) return "interior point matched to a point at infinity";
      int e = -1;
      for (int f = 0; f < t.graph.edge_count(); ++f)
        if (t.graph.edges[static_cast<std::size_t>(f)].head == mk.vertex || t.graph.edges[static_cast<std::size_t>(f)].tail == mk.vertex) e = f;
      LatticePoint u = t.directions[static_cast<std::size_t>(e)].primitive;
      auto sides = cfg.polygon.sides();
      if (*pt.side < 0 || static_cast<std::size_t>(*pt.side) >= sides.size()) return "boundary point names a missing side";
      if (sides[static_cast<std::size_t>(*pt.side)].normal != u) return "end does not close on the side of its point";
      int vc = col.vertex[static_cast<std::size_t>(t.graph.edges[static_cast<std::size_t>(e)].tail)];
      auto& r = sys.add(n, pt.parameter);
      r[static_cast<std::size_t>(vc)] -= u.y, r[static_cast<std::size_t>(vc + 1)] += u.x;
    }
  }
  return std::nullopt;
}

enum class Elimination { Unique, Inconsistent, Underdetermined };

Elimination eliminate(LinearSystem& sys, int columns, std::vector<Rational>& solution) {
  auto& a = sys.rows;
  auto& b = sys.rhs;
  const std::size_t m = a.size();
  std::size_t row = 0;
  std::vector<int> pivot_col;
  for (int c = 0; c < columns && row < m; ++c) {
    std::size_t p = row;
    while (p < m && a[p][static_cast<std::size_t>(c)] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[row]);
    std::swap(b[p], b[row]);
    Rational inv = 1 / a[row][static_cast<std::size_t>(c)];
    for (auto& x : a[row]) x *= inv;
    b[row] *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || a[r][static_cast<std::size_t>(c)] == 0) continue;
      Rational f = a[r][static_cast<std::size_t>(c)];
      for (std::size_t k = static_cast<std::size_t>(c); k < static_cast<std::size_t>(columns); ++k)
        if (a[row][k] != 0) a[r][k] -= f * a[row][k];
      b[r] -= f * b[row];
    }
    pivot_col.push_back(c);
    ++row;
  }
  for (std::size_t r = row; r < m; ++r)
    if (b[r] != 0) return Elimination::Inconsistent;
  if (static_cast<int>(row) < columns) return Elimination::Underdetermined;
  solution.assign(static_cast<std::size_t>(columns), Rational(0));
  for (std::size_t r = 0; r < row; ++r) solution[static_cast<std::size_t>(pivot_col[r])] = b[r];
  return Elimination::Unique;
}

}  // namespace

std::size_t equation_count(const CombinatorialType& t) {
  std::size_t rows = 0;
  for (const auto& ed : t.graph.edges)
    if (t.graph.is_finite(ed.tail) && t.graph.is_finite(ed.head)) rows += 2;
  for (const auto& mk : t.marks) rows += (mk.edge < 0 && !t.graph.is_finite(mk.vertex)) ? 1 : 2;
  return rows;
}

SolveOutcome solve_type(const CombinatorialType& t, const Configuration& cfg, const std::vector<std::size_t>* order,
                        bool require_regular) {
  if (t.marks.size() != cfg.points.size()) throw Error("solve_type: mark count differs from the configuration size");
  if (require_regular && !check_regular(t.graph, t.marks)) throw HypothesisError("regularity", "type is not regular");
  for (int e = 0; e < t.graph.edge_count(); ++e)
    if (!t.graph.is_finite(t.graph.edges[static_cast<std::size_t>(e)].tail))
      throw StructuralError("edge " + std::to_string(e) + ": an end must have its finite vertex as tail");

  Columns col = layout_columns(t);
  LinearSystem sys;
  SolveOutcome out;
  if (auto reason = build_rows(t, cfg, col, sys)) {
    out.reason = *reason;
    return out;
  }
  if (order) {
    if (order->size() != sys.rows.size()) throw Error("solve_type: equation order has the wrong length");
    LinearSystem permuted;
    for (std::size_t i : *order) {
      permuted.rows.push_back(sys.rows.at(i));
      permuted.rhs.push_back(sys.rhs.at(i));
    }
    sys = std::move(permuted);
  }
  std::vector<Rational> x;
  switch (eliminate(sys, col.count, x)) {
    case Elimination::Inconsistent:
      out.reason = "inconsistent linear system";
      return out;
    case Elimination::Underdetermined:
      out.status = SolveStatus::Degenerate;
      out.reason = "constraints do not determine the curve";
      return out;
    case Elimination::Unique: break;
  }

  MarkedCurve m;
  m.curve.graph = t.graph;
  m.curve.directions = t.directions;
  for (int v = 0; v < t.graph.vertex_count(); ++v) {
    int vc = col.vertex[static_cast<std::size_t>(v)];
    if (vc < 0)
      m.curve.positions.emplace_back(std::nullopt);
    else
      m.curve.positions.emplace_back(RationalPoint(x[static_cast<std::size_t>(vc)], x[static_cast<std::size_t>(vc + 1)]));
  }
  for (int e = 0; e < t.graph.edge_count(); ++e) {
    auto& ed = m.curve.graph.edges[static_cast<std::size_t>(e)];
    int lc = col.length[static_cast<std::size_t>(e)];
    if (lc < 0) {
      ed.length = Length::infinite();
      continue;
    }
    const Rational& l = x[static_cast<std::size_t>(lc)];
    if (l <= 0) {
      out.reason = "edge " + std::to_string(e) + " has non-positive length";
      return out;
    }
    ed.length = Length(l);
  }
  for (std::size_t i = 0; i < t.marks.size(); ++i) {
    const auto& pl = t.marks[i];
    Mark mk;
    mk.cls = pl.cls;
    mk.mt = pl.mt;
    if (pl.edge >= 0) {
      const Rational& off = x[static_cast<std::size_t>(col.offset[i])];
      const auto& ed = m.curve.graph.edges[static_cast<std::size_t>(pl.edge)];
      if (off <= 0 || (!ed.length.is_infinite() && off >= ed.length.value())) {
        out.reason = "mark " + std::to_string(i) + " leaves the interior of its edge";
        return out;
      }
      mk.point = GraphPoint::on_edge(pl.edge, off);
    } else {
      mk.point = GraphPoint::at_vertex(pl.vertex);
    }
    m.marks.push_back(std::move(mk));
  }
  out.status = SolveStatus::Solved;
  out.curve = std::move(m);
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  }
  void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

std::vector<MarkPlacement> placements(const MarkedCurve& m) { return type_of(m).marks; }

}  // namespace

bool check_regular(const AbstractGraph& g, const std::vector<MarkPlacement>& marks) {
  const std::size_t nv = g.vertices.size();
  std::vector<bool> marked(nv, false);
  std::vector<int> inside(g.edges.size(), 0);
  for (const auto& mk : marks) {
    if (mk.edge >= 0)
      ++inside.at(static_cast<std::size_t>(mk.edge));
    else
      marked.at(static_cast<std::size_t>(mk.vertex)) = true;
  }
  UnionFind uf(nv);
  std::vector<int> joined;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    int a = g.edges[e].tail, b = g.edges[e].head;
    bool am = marked[static_cast<std::size_t>(a)], bm = marked[static_cast<std::size_t>(b)];
    if (inside[e] >= 2) return false;
    if (inside[e] == 1) {
      if (am || bm) return false;
      continue;
    }
    if (am && bm) return false;
    if (!am && !bm) {
      uf.unite(a, b);
      joined.push_back(static_cast<int>(e));
    }
  }
  std::vector<int> verts(nv, 0), edges(nv, 0), ends(nv, 0);
  for (std::size_t v = 0; v < nv; ++v) {
    if (marked[v]) continue;
    int r = uf.find(static_cast<int>(v));
    ++verts[static_cast<std::size_t>(r)];
    if (!g.is_finite(static_cast<int>(v))) ++ends[static_cast<std::size_t>(r)];
  }
  for (int e : joined) ++edges[static_cast<std::size_t>(uf.find(g.edges[static_cast<std::size_t>(e)].tail))];
  for (std::size_t v = 0; v < nv; ++v) {
    if (marked[v] || uf.find(static_cast<int>(v)) != static_cast<int>(v)) continue;
    if (ends[v] != 1 || edges[v] != verts[v] - 1) return false;
  }
  return true;
}

bool check_regular(const MarkedCurve& m) { return check_regular(m.curve.graph, placements(m)); }

Orientation orient_components(const MarkedCurve& m) {
  const PPTCurve& c = m.curve;
  auto pl = placements(m);
  if (!check_regular(c.graph, pl)) throw HypothesisError("regularity", "a component of the unmarked graph is not a tree with one unmarked end");
  const std::size_t nv = c.graph.vertices.size();
  std::vector<bool> marked(nv, false), inside(c.graph.edges.size(), false);
  for (const auto& p : pl) {
    if (p.edge >= 0)
      inside[static_cast<std::size_t>(p.edge)] = true;
    else
      marked[static_cast<std::size_t>(p.vertex)] = true;
  }
  auto inc = c.graph.incidence();
  Orientation o;
  o.outgoing.assign(nv, -1);
  o.toward.assign(c.graph.edges.size(), -1);
  for (int u = 0; u < static_cast<int>(nv); ++u) {
    if (c.graph.is_finite(u) || marked[static_cast<std::size_t>(u)]) continue;
    int e = inc[static_cast<std::size_t>(u)].front();
    o.toward[static_cast<std::size_t>(e)] = u;
    if (inside[static_cast<std::size_t>(e)]) {
      o.toward[static_cast<std::size_t>(e)] = -1;
      continue;
    }
    std::vector<std::pair<int, int>> stack{{c.other_end(e, u), e}};
    while (!stack.empty()) {
      auto [x, via] = stack.back();
      stack.pop_back();
      if (marked[static_cast<std::size_t>(x)]) continue;
      o.outgoing[static_cast<std::size_t>(x)] = via;
      for (int f : inc[static_cast<std::size_t>(x)]) {
        if (f == via) continue;
        if (inside[static_cast<std::size_t>(f)]) {
          o.toward[static_cast<std::size_t>(f)] = -1;
          continue;
        }
        o.toward[static_cast<std::size_t>(f)] = x;
        stack.push_back({c.other_end(f, x), f});
      }
    }
  }
  for (int v : c.finite_vertices()) {
    if (marked[static_cast<std::size_t>(v)]) continue;
    int e = o.outgoing[static_cast<std::size_t>(v)];
    if (e < 0) throw HypothesisError("regularity", "vertex " + std::to_string(v) + " is not reached from an unmarked end");
    if (is_multiple_at(c, e, v))
      throw HypothesisError("orientation", "edge " + std::to_string(e) + " emanating from vertex " + std::to_string(v) + " is multiple");
  }
  return o;
}

}  // namespace tropicount
