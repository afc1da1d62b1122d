#include "tropicount/weights.hpp"

#include "tropicount/duality.hpp"
#include "tropicount/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace tropicount {

namespace {

std::string at_vertex(int v) { return "vertex " + std::to_string(v); }
std::string at_edge(int e) { return "edge " + std::to_string(e); }
std::string at_mark(std::size_t i) { return "mark " + std::to_string(i); }

Rational sign(std::size_t count) { return count % 2 == 0 ? Rational(1) : Rational(-1); }

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x)
      x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  }
  void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

// Vertex hosting each vertex mark, -1 elsewhere.
std::vector<int> vertex_marks(const MarkedCurve& m) {
  std::vector<int> at(m.curve.graph.vertices.size(), -1);
  for (std::size_t i = 0; i < m.marks.size(); ++i) {
    GraphPoint p = normalize(m.curve, m.marks[i].point);
    if (p.is_vertex()) at[static_cast<std::size_t>(p.vertex)] = static_cast<int>(i);
  }
  return at;
}

// |Delta_v| / (w(e1) w(e2)) over the edges pointing into v.
Rational incoming_ratio(const PPTCurve& c, int v, const Orientation& o) {
  Rational r(vertex_triangle(c, v).volume);
  const auto inc = c.graph.incidence();
  for (int e : inc.at(static_cast<std::size_t>(v)))
    if (e != o.outgoing.at(static_cast<std::size_t>(v))) r /= c.weight(e);
  return r;
}

void require(const ValidationReport& rep) {
  if (!rep.ok()) throw HypothesisError(rep.issues.front().rule, rep.issues.front().location + ": " + rep.issues.front().message);
}

}  // namespace

VertexTriangle vertex_triangle(const PPTCurve& c, int v) {
  VertexTriangle t;
  t.vertex = v;
  t.polygon = vertex_polygon(c, v);
  t.volume = lattice_volume(t.polygon);
  return t;
}

WeightBreakdown complex_weight(const MarkedCurve& m, const WeightOptions& options) {
  const PPTCurve& c = m.curve;
  check_structure(c);
  require(validate_marks(m));
  if (classify(c).kind == CurveClass::Neither) throw HypothesisError("pseudo-simple", "curve is neither simple nor pseudo-simple");
  for (int e : c.bounded_edges()) {
    const auto& ed = c.graph.edges[static_cast<std::size_t>(e)];
    if (is_multiple_at(c, e, ed.tail) && is_multiple_at(c, e, ed.head))
      throw HypothesisError("T1", at_edge(e) + " is multiple at both endpoints");
  }
  auto inc = c.graph.incidence();
  auto marked = vertex_marks(m);
  for (int v : c.finite_vertices())
    if (marked[static_cast<std::size_t>(v)] >= 0 && inc[static_cast<std::size_t>(v)].size() > 3)
      throw HypothesisError("T2", "mark at " + at_vertex(v) + " of valency above 3");
  Orientation o = orient_components(m);

  WeightBreakdown out;
  out.total = 1;
  auto push = [&](std::vector<Factor>& to, std::string rule, std::string where, Rational value) {
    out.total *= value;
    to.push_back({std::move(rule), std::move(where), std::move(value)});
  };
  for (int v : c.finite_vertices()) {
    const std::size_t valency = inc[static_cast<std::size_t>(v)].size();
    if (marked[static_cast<std::size_t>(v)] >= 0) {
      push(out.vertices, "M3", at_vertex(v), Rational(vertex_triangle(c, v).volume));
    } else if (valency == 3) {
      push(out.vertices, "M4", at_vertex(v), incoming_ratio(c, v, o));
    } else {
      auto def = deform_star(c.position(v), star_ends(m, v, o), options);
      Rational sum = 0;
      for (const auto& q : def.curves) sum += complex_weight(q, options).total;
      push(out.vertices, "M5", at_vertex(v), sum);
    }
  }
  for (int e : c.bounded_edges()) push(out.edges, "M1", at_edge(e), Rational(c.weight(e)));
  for (std::size_t i = 0; i < m.marks.size(); ++i) {
    GraphPoint p = normalize(c, m.marks[i].point);
    push(out.marks, "M2", at_mark(i), p.is_vertex() ? Rational(1) : Rational(c.weight(p.edge)));
  }
  return out;
}

Rational simple_weight(const MarkedCurve& m) {
  const PPTCurve& c = m.curve;
  check_structure(c);
  auto inc = c.graph.incidence();
  Rational r = 1;
  for (int v : c.finite_vertices()) {
    if (inc[static_cast<std::size_t>(v)].size() != 3) throw HypothesisError("simple", at_vertex(v) + " is not trivalent");
    r *= vertex_triangle(c, v).volume;
  }
  for (std::size_t i = 0; i < m.marks.size(); ++i) {
    if (!m.mark_at_infinity(i)) continue;
    int u = normalize(c, m.marks[i].point).vertex;
    r /= c.weight(inc[static_cast<std::size_t>(u)].front());
  }
  return r;
}

ValidationReport real_structure_report(const RealMarkedCurve& r) {
  ValidationReport rep;
  const PPTCurve& c = r.base.curve;
  auto inc = c.graph.incidence();
  const std::size_t nv = c.graph.vertices.size(), ne = c.graph.edges.size();

  // R1: components of the fixed locus.
  UnionFind fixed(nv);
  bool any = false;
  for (std::size_t v = 0; v < nv; ++v) any = any || r.fixed_vertex(static_cast<int>(v));
  for (std::size_t e = 0; e < ne; ++e)
    if (r.fixed_edge(static_cast<int>(e))) fixed.unite(c.graph.edges[e].tail, c.graph.edges[e].head);
  if (!any) rep.add("R1", "curve", "the real part is empty");
  for (int v = 0; v < static_cast<int>(nv); ++v) {
    if (!r.fixed_vertex(v)) continue;
    bool has_edge = std::any_of(inc[static_cast<std::size_t>(v)].begin(), inc[static_cast<std::size_t>(v)].end(),
                                [&](int e) { return r.fixed_edge(e); });
    if (!has_edge) rep.add("R1", at_vertex(v), "isolated point of the real part");
  }

  for (int v : c.finite_vertices())
    if (!r.fixed_vertex(v) && inc[static_cast<std::size_t>(v)].size() != 3)
      rep.add("R2", at_vertex(v), "non-real vertex is not trivalent");

  std::vector<GraphPoint> pts;
  for (const auto& mk : r.base.marks) pts.push_back(normalize(c, mk.point));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    const bool imaginary = r.tags[i] == Reality::Imaginary;
    if (p.is_vertex()) {
      if (!r.fixed_vertex(p.vertex)) {
        if (c.graph.is_finite(p.vertex)) rep.add("R3", at_mark(i), "mark at a vertex of the non-real part");
      } else if (imaginary && (!c.graph.is_finite(p.vertex) || inc[static_cast<std::size_t>(p.vertex)].size() != 3)) {
        rep.add("R4", at_mark(i), "imaginary mark in the real part away from a trivalent vertex");
      }
    } else if (r.fixed_edge(p.edge) && imaginary) {
      rep.add("R4", at_mark(i), "imaginary mark inside a real edge");
    }
  }

  // R5: pieces of non-real edges cut at marks, glued through unmarked non-real vertices.
  std::vector<int> vmark = vertex_marks(r.base);
  std::vector<std::vector<std::size_t>> inside(ne);
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (!pts[i].is_vertex()) inside[static_cast<std::size_t>(pts[i].edge)].push_back(i);
  std::vector<bool> im_closure;
  std::vector<std::pair<int, int>> attach;  // (vertex, piece)
  auto is_im = [&](int mark) { return mark >= 0 && r.tags[static_cast<std::size_t>(mark)] == Reality::Imaginary; };
  for (std::size_t e = 0; e < ne; ++e) {
    if (r.fixed_edge(static_cast<int>(e))) continue;
    auto& ms = inside[e];
    std::sort(ms.begin(), ms.end(), [&](std::size_t a, std::size_t b) { return pts[a].offset < pts[b].offset; });
    const int first = static_cast<int>(im_closure.size());
    for (std::size_t j = 0; j <= ms.size(); ++j) {
      bool im = (j > 0 && is_im(static_cast<int>(ms[j - 1]))) || (j < ms.size() && is_im(static_cast<int>(ms[j])));
      im_closure.push_back(im);
    }
    attach.push_back({c.graph.edges[e].tail, first});
    attach.push_back({c.graph.edges[e].head, static_cast<int>(im_closure.size()) - 1});
  }
  UnionFind pieces(im_closure.size());
  std::map<int, int> through;
  for (auto [v, piece] : attach) {
    const int mk = vmark[static_cast<std::size_t>(v)];
    if (r.fixed_vertex(v) || mk >= 0) {
      if (is_im(mk)) im_closure[static_cast<std::size_t>(piece)] = true;
      continue;
    }
    auto [it, fresh] = through.emplace(v, piece);
    if (!fresh) pieces.unite(piece, it->second);
  }
  std::map<int, bool> component_ok;
  for (std::size_t p = 0; p < im_closure.size(); ++p) {
    auto& ok = component_ok[pieces.find(static_cast<int>(p))];
    ok = ok || im_closure[p];
  }
  for (const auto& [root, ok] : component_ok)
    if (!ok) rep.add("R5", "component " + std::to_string(root), "closure carries no imaginary mark");
  return rep;
}

namespace {

Rational real_star_weight(const RealMarkedCurve& r, int v, const Orientation& o, const WeightOptions& options);

}  // namespace

RealWeightBreakdown real_weight(const RealMarkedCurve& r, const WeightOptions& options) {
  check_involution(r);
  require(real_structure_report(r));
  const MarkedCurve& m = r.base;
  const PPTCurve& c = m.curve;
  require(validate_marks(m));
  Orientation o = orient_components(m);
  auto inc = c.graph.incidence();

  RealWeightBreakdown out;
  Rational product = 1;
  auto push = [&](std::string rule, std::string where, Rational value) {
    product *= value;
    out.factors.push_back({std::move(rule), std::move(where), std::move(value)});
  };

  for (int e = 0; e < c.graph.edge_count(); ++e) {
    const int partner = r.edge_map[static_cast<std::size_t>(e)];
    if (partner == e)
      push("W1", at_edge(e), c.weight(e) % 2 == 0 ? Rational(0) : Rational(1));
    else if (e < partner)
      push("W1", at_edge(e) + "+" + std::to_string(partner), c.is_end(e) ? Rational(1) : Rational(c.weight(e)));
  }

  std::size_t re_in_im = 0, im_in_im = 0;
  for (std::size_t i = 0; i < m.marks.size(); ++i) {
    GraphPoint p = normalize(c, m.marks[i].point);
    const bool imaginary = r.tags[i] == Reality::Imaginary;
    const bool in_im = p.is_vertex() ? !r.fixed_vertex(p.vertex) : !r.fixed_edge(p.edge);
    if (in_im) ++(imaginary ? im_in_im : re_in_im);
    if (p.is_vertex() && !c.graph.is_finite(p.vertex)) continue;
    if (p.is_vertex()) {
      push("W2", at_mark(i), imaginary ? Rational(vertex_triangle(c, p.vertex).volume) : Rational(1));
    } else if (!in_im) {
      push("W2", at_mark(i), Rational(1));
    } else {
      const std::size_t partner = static_cast<std::size_t>(r.mark_map[i]);
      if (i < partner) push("W2", at_mark(i) + "+" + std::to_string(partner), Rational(c.weight(p.edge)));
    }
  }

  for (int v : c.finite_vertices()) {
    const auto& edges = inc[static_cast<std::size_t>(v)];
    auto lp = lattice_points(vertex_triangle(c, v).polygon);
    if (!r.fixed_vertex(v)) {
      const int partner = r.vertex_map[static_cast<std::size_t>(v)];
      if (v < partner)
        push("W3", at_vertex(v) + "+" + std::to_string(partner), sign(lp.boundary.size()) * incoming_ratio(c, v, o));
      continue;
    }
    if (edges.size() == 3) {
      push("W3", at_vertex(v), sign(lp.interior.size()));
      continue;
    }
    if (edges.size() == 4) {
      std::vector<int> re, im;
      for (int e : edges) (r.fixed_edge(e) ? re : im).push_back(e);
      if (re.size() == 2 && im.size() == 2 && !is_multiple_at(c, re[0], v) && !is_multiple_at(c, re[1], v) &&
          is_multiple_at(c, im[0], v)) {
        Rational value = sign(lp.interior.size()) * Rational(vertex_triangle(c, v).volume) / Rational(2 * c.weight(im[0]));
        push("W4", at_vertex(v), value);
        continue;
      }
    }
    push("W5", at_vertex(v), real_star_weight(r, v, o, options));
  }

  const std::vector<int> comps = [&] {
    UnionFind uf(c.graph.edges.size());
    std::map<int, int> through;
    std::vector<int> im_edges;
    for (int e = 0; e < c.graph.edge_count(); ++e) {
      if (r.fixed_edge(e)) continue;
      im_edges.push_back(e);
      for (int x : {c.graph.edges[static_cast<std::size_t>(e)].tail, c.graph.edges[static_cast<std::size_t>(e)].head}) {
        if (r.fixed_vertex(x)) continue;
        auto [it, fresh] = through.emplace(x, e);
        if (!fresh) uf.unite(e, it->second);
      }
    }
    std::vector<int> roots;
    for (int e : im_edges) roots.push_back(uf.find(e));
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
  }();
  if (re_in_im % 2 != 0) throw HypothesisError("parity", "odd number of real marks in the non-real part");
  const long long twice_l2 = static_cast<long long>(im_in_im) - static_cast<long long>(comps.size());
  if (twice_l2 % 2 != 0) throw HypothesisError("parity", "imaginary marks and non-real components have odd difference");
  out.l1 = Integer(re_in_im / 2);
  out.l2 = Integer(twice_l2 / 2);
  Rational scale = out.l1 % 2 == 0 ? Rational(1) : Rational(-1);
  for (long long k = 0; k < twice_l2 / 2; ++k) scale *= 2;
  for (long long k = 0; k > twice_l2 / 2; --k) scale /= 2;
  out.total = scale * product;
  return out;
}

namespace {

Rational real_star_weight(const RealMarkedCurve& r, int v, const Orientation& o, const WeightOptions& options) {
  const PPTCurve& c = r.base.curve;
  const int out = o.outgoing.at(static_cast<std::size_t>(v));
  if (out < 0 || !r.fixed_edge(out) || is_multiple_at(c, out, v))
    throw HypothesisError("W5", at_vertex(v) + " has no simple real emanating edge");

  struct Group {
    std::vector<int> real;
    std::vector<int> pairs;
  };
  std::map<LatticePoint, Group> groups;
  const auto inc = c.graph.incidence();
  for (int e : inc.at(static_cast<std::size_t>(v))) {
    if (e == out) continue;
    auto& g = groups[c.outgoing_direction(e, v).primitive];
    const int partner = r.edge_map[static_cast<std::size_t>(e)];
    if (partner == e)
      g.real.push_back(e);
    else if (e < partner)
      g.pairs.push_back(e);
  }
  if (groups.size() != 2) throw HypothesisError("W5", at_vertex(v) + " does not have two incoming directions");
  bool admissible = false;
  for (const auto& [u, g] : groups) admissible = admissible || g.real.size() + 2 * g.pairs.size() >= 2;
  if (!admissible) throw HypothesisError("W5", at_vertex(v) + " has no direction class with r + 2s >= 2");

  // Quotient star: real edges keep their weight, conjugate pairs merge with doubled weight.
  struct End {
    WeightedDirection d;
    bool imaginary;
    auto operator<=>(const End&) const = default;
  };
  std::vector<End> ends;
  for (const auto& [u, g] : groups) {
    for (int e : g.real) ends.push_back({c.outgoing_direction(e, v), false});
    for (int e : g.pairs) ends.push_back({WeightedDirection{u, 2 * c.weight(e)}, true});
  }
  std::sort(ends.begin(), ends.end());
  ends.push_back({c.outgoing_direction(out, v), false});
  std::vector<WeightedDirection> dirs;
  for (const auto& e : ends) dirs.push_back(e.d);

  auto def = deform_star(c.position(v), dirs, options);
  Rational sum = 0;
  const int k = static_cast<int>(ends.size());
  for (const auto& q : def.curves) {
    const PPTCurve& qc = q.curve;
    std::vector<bool> in(qc.graph.edges.size(), false);
    for (int e = 0; e < qc.graph.edge_count(); ++e) {
      int head = qc.graph.edges[static_cast<std::size_t>(e)].head;
      if (head < k && ends[static_cast<std::size_t>(head)].imaginary) in[static_cast<std::size_t>(e)] = true;
    }
    auto qinc = qc.graph.incidence();
    for (bool grew = true; grew;) {
      grew = false;
      for (int p : qc.finite_vertices()) {
        const auto& around = qinc[static_cast<std::size_t>(p)];
        auto n = std::count_if(around.begin(), around.end(), [&](int e) { return in[static_cast<std::size_t>(e)]; });
        if (n < 2 || n == static_cast<long>(around.size())) continue;
        for (int e : around) in[static_cast<std::size_t>(e)] = true;
        grew = true;
      }
    }
    std::vector<int> doubled;
    for (int e = 0; e < qc.graph.edge_count(); ++e)
      if (in[static_cast<std::size_t>(e)]) doubled.push_back(e);
    sum += real_weight(double_curve(q, doubled, Reality::Imaginary), options).total;
  }
  return sum;
}

}  // namespace

}  // namespace tropicount
