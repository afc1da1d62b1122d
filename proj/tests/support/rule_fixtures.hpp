#pragma once

// Curves and configurations that break one validator rule each, shared by the unit tests
// and the acceptance binary.

#include "support/fixtures.hpp"
#include "support/real_curves.hpp"
#include "tropicount/error.hpp"
#include "tropicount/patchdata.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

namespace tropicount::testing {

inline bool has_prefix(const ValidationReport& rep, const std::string& prefix) {
  return std::any_of(rep.issues.begin(), rep.issues.end(), [&](const Issue& i) { return i.rule.rfind(prefix, 0) == 0; });
}

// The rule of the HypothesisError thrown by f, or "" when nothing is thrown.
inline std::string rule_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const HypothesisError& e) {
    return e.rule();
  }
  return "";
}

// One vertex at the origin with the given ends; offsets[i] lists the marks on end i.
inline MarkedCurve star_marked(const std::vector<WeightedDirection>& ends, const std::vector<std::vector<Rational>>& offsets) {
  CurveBuilder b;
  int v = b.vertex(pt(0, 0));
  for (std::size_t i = 0; i < ends.size(); ++i) {
    int e = b.end(v, ends[i].primitive, ends[i].weight);
    if (i < offsets.size())
      for (const auto& t : offsets[i]) b.mark_on(e, t);
  }
  return b.marked();
}

inline MarkedCurve star_unmarked(std::initializer_list<LatticePoint> ends) {
  CurveBuilder b;
  int v = b.vertex(pt(0, 0));
  for (LatticePoint d : ends) b.end(v, d);
  return b.marked();
}

// Vertex at the origin with two parallel unit edges to distinct vertices over (1, 0).
struct ForkCurve {
  CurveBuilder b;
  int v, a, c, ea, ec;
  ForkCurve() {
    v = b.vertex(pt(0, 0));
    a = b.vertex(pt(1, 0));
    c = b.vertex(pt(1, 0));
    ea = b.edge_along(v, a, {1, 0}, q(1));
    ec = b.edge_along(v, c, {1, 0}, q(1));
    b.end(v, {-1, 1});
    b.end(v, {-1, -1});
    for (int x : {a, c}) {
      b.end(x, {1, 1});
      b.end(x, {0, -1});
    }
  }
};

// Two disjoint copies swapped by the involution.
inline RealMarkedCurve swapped_copies(const MarkedCurve& m) {
  RealMarkedCurve r;
  const int nv = m.curve.graph.vertex_count(), ne = m.curve.graph.edge_count();
  r.base = m;
  auto& c = r.base.curve;
  for (int v = 0; v < nv; ++v) {
    c.graph.vertices.push_back(c.graph.vertices[static_cast<std::size_t>(v)]);
    c.positions.push_back(c.positions[static_cast<std::size_t>(v)]);
  }
  for (int e = 0; e < ne; ++e) {
    GraphEdge ge = c.graph.edges[static_cast<std::size_t>(e)];
    ge.tail += nv;
    ge.head += nv;
    c.graph.edges.push_back(ge);
    c.directions.push_back(c.directions[static_cast<std::size_t>(e)]);
  }
  for (int v = 0; v < 2 * nv; ++v) r.vertex_map.push_back(v < nv ? v + nv : v - nv);
  for (int e = 0; e < 2 * ne; ++e) r.edge_map.push_back(e < ne ? e + ne : e - ne);
  return r;
}

// Appends two marks exchanged by the involution.
inline void add_pair(RealMarkedCurve& r, GraphPoint a, GraphPoint b, Reality tag) {
  const int i = static_cast<int>(r.base.marks.size());
  r.base.marks.push_back(Mark{std::move(a)});
  r.base.marks.push_back(Mark{std::move(b)});
  r.mark_map.push_back(i + 1);
  r.mark_map.push_back(i);
  r.tags.push_back(tag);
  r.tags.push_back(tag);
}

// Algebraic points over the finite marks: a real point under each real mark, a conjugate
// pair under each imaginary vertex mark.
inline KConfiguration k_for(const RealMarkedCurve& r) {
  KConfiguration k;
  const auto& m = r.base;
  std::vector<RationalPoint> seen;
  for (std::size_t i = 0; i < m.marks.size(); ++i) {
    if (m.mark_at_infinity(i)) continue;
    GraphPoint p = normalize(m.curve, m.marks[i].point);
    RationalPoint x = image(m.curve, p);
    if (std::find(seen.begin(), seen.end(), x) != seen.end()) continue;
    const int n = static_cast<int>(k.points.size());
    if (r.tags[i] == Reality::Real) {
      k.points.push_back({ConfigPoint::interior(x), {{{1, 0}, {2, 0}}}, n});
    } else if (p.is_vertex()) {
      k.points.push_back({ConfigPoint::interior(x), {{{1, 1}, {2, 0}}}, n + 1});
      k.points.push_back({ConfigPoint::interior(x), {{{1, -1}, {2, 0}}}, n});
    } else {
      continue;
    }
    seen.push_back(x);
  }
  return k;
}

inline PatchContext cubic_context(std::size_t index = 0) {
  auto res = plane_curves(3, 0);
  const auto& m = res.curves.at(index).curve;
  return make_context(m, make_kconfiguration(m, res.config, 1));
}

// Tripod of weight w with a mark at infinity on its horizontal end and a finite mark on
// the vertical one, with the matching boundary point (index 0) and interior point.
inline std::pair<MarkedCurve, KConfiguration> tangent_tripod(std::int64_t w) {
  MarkedCurve m = tripod().marked();
  for (auto& d : m.curve.directions) d.weight = w;
  m.marks.push_back(Mark{GraphPoint::at_vertex(m.curve.graph.edges[0].head)});
  m.marks.push_back(Mark{GraphPoint::on_edge(1, q(1))});
  KConfiguration k;
  k.polygon = triangle(static_cast<int>(w));
  auto loc = compactify_end(m.curve, 0, k.polygon);
  k.points.push_back({ConfigPoint::boundary(loc.index, loc.parameter), {{{1, 0}, {1, 0}}}, 0});
  k.points.push_back({ConfigPoint::interior(image(m.curve, m.marks[1].point)), {{{1, 0}, {1, 0}}}, 1});
  k.psi[0] = 0;
  return {m, k};
}

struct RuleFixture {
  std::string rule;  // matched as a prefix of the reported rule
  std::string name;
  std::function<ValidationReport()> run;
};

namespace detail {

inline ValidationReport thrown(const std::function<void()>& f) {
  ValidationReport rep;
  const std::string r = rule_of(f);
  if (!r.empty()) rep.add(r, "thrown", "");
  return rep;
}

inline ValidationReport with_tuple(const PatchContext& ctx, const std::function<void(CompatibleTuple&)>& edit) {
  auto t = full_tuple(ctx);
  edit(t);
  return check_compatible(t, ctx);
}

}  // namespace detail

// Every fixture is expected to report its rule.
inline std::vector<RuleFixture> rule_fixtures() {
  std::vector<RuleFixture> out;
  auto add = [&](std::string rule, std::string name, std::function<ValidationReport()> f) {
    out.push_back({std::move(rule), std::move(name), std::move(f)});
  };

  add("T1", "horizontal edge with parallel ends at both endpoints", [] {
    CurveBuilder b;
    int v = b.vertex(pt(0, 0)), w = b.vertex(pt(1, 0));
    b.edge(v, w);
    for (LatticePoint d : {LatticePoint{1, 0}, {-1, 1}, {-1, -1}}) b.end(v, d);
    for (LatticePoint d : {LatticePoint{-1, 0}, {1, 1}, {1, -1}}) b.end(w, d);
    return check_T(b.marked());
  });
  add("T1", "vertical edge of length 2", [] {
    CurveBuilder b;
    int v = b.vertex(pt(0, 0)), w = b.vertex(pt(0, 2));
    b.edge(v, w);
    for (LatticePoint d : {LatticePoint{0, 1}, {1, -1}, {-1, -1}}) b.end(v, d);
    for (LatticePoint d : {LatticePoint{0, -1}, {1, 1}, {-1, 1}}) b.end(w, d);
    return check_T(b.marked());
  });
  add("T2", "mark on a four-valent vertex", [] {
    auto m = star_unmarked({{-1, 0}, {0, -1}, {1, 0}, {0, 1}});
    m.marks.push_back(Mark{GraphPoint::at_vertex(0)});
    return check_T(m);
  });
  add("T2", "mark on a five-valent vertex", [] {
    auto m = star_unmarked({{-1, 0}, {-1, 0}, {0, -1}, {1, 1}, {1, 0}});
    m.marks.push_back(Mark{GraphPoint::at_vertex(0)});
    return check_T(m);
  });
  // Marks on every end of a line: the points carry an end-marked curve.
  add("T3", "marks on all ends of a line", [] {
    TOptions on;
    on.genericity = true;
    return check_T(tripod().mark_on(0, q(1)).mark_on(1, q(1)).mark_on(2, q(1)).marked(), on);
  });
  add("T3", "marks on all ends of a shifted line", [] {
    TOptions on;
    on.genericity = true;
    return check_T(tripod(pt(1, -1)).mark_on(0, q(2)).mark_on(1, q(3)).mark_on(2, q(1, 2)).marked(), on);
  });
  add("T4", "special ends of weight 2", [] {
    return check_T(star_marked({dir(-1, 0, 2), dir(-1, 0, 2), dir(0, -1), dir(4, 1)}, {{q(1)}, {q(1)}}));
  });
  add("T4", "special vertex without a simple unit edge", [] {
    return check_T(star_marked({dir(-1, 0), dir(-1, 0), dir(0, -1, 2), dir(1, 1, 2)}, {{q(1)}, {q(1)}}));
  });
  add("T5", "two point pairs on horizontal ends", [] {
    return check_T(star_marked({dir(-1, 0), dir(-1, 0), dir(0, -1), dir(2, 1)}, {{q(1), q(2)}, {q(1), q(2)}}));
  });
  add("T5", "two point pairs on vertical ends", [] {
    return check_T(star_marked({dir(0, -1), dir(0, -1), dir(-1, 0), dir(1, 2)}, {{q(1), q(3)}, {q(1), q(3)}}));
  });
  add("T6", "special pair of ends", [] {
    return check_T(star_marked({dir(-1, 0), dir(-1, 0), dir(0, -1), dir(2, 1)}, {{q(1)}, {q(1)}}));
  });
  add("T6", "parallel edges ending at a pair of double marks", [] {
    ForkCurve f;
    f.b.mark_vertex(f.a, MarkClass::Double, Mt::Both).mark_vertex(f.c, MarkClass::Double, Mt::Both);
    return check_T(f.b.marked());
  });
  add("T7", "marked ends", [] {
    return check_T(star_marked({dir(0, -1), dir(0, -1), dir(-1, 0), dir(1, 2)}, {{q(2)}, {q(2)}}));
  });
  add("T7", "marks near the vertex on parallel edges", [] {
    ForkCurve f;
    f.b.mark_on(f.ea, q(1, 4)).mark_on(f.ec, q(1, 4));
    return check_T(f.b.marked());
  });

  add("R1", "empty real part", [] { return check_R(swapped_copies(tripod().marked()), {}); });
  add("R1", "isolated real point", [] {
    RealMarkedCurve r;
    r.base = star_unmarked({{1, 0}, {1, 0}, {-1, 0}, {-1, 0}});
    r.vertex_map = {0, 2, 1, 4, 3};
    r.edge_map = {1, 0, 3, 2};
    return check_R(r, {});
  });
  add("R2", "four-valent non-real vertices", [] {
    return check_R(swapped_copies(star_unmarked({{-1, 0}, {0, -1}, {1, 0}, {0, 1}})), {});
  });
  add("R2", "five-valent non-real vertices", [] {
    return check_R(swapped_copies(star_unmarked({{-1, 0}, {-1, 0}, {0, -1}, {1, 1}, {1, 0}})), {});
  });
  for (std::size_t n = 0; n < 2; ++n)
    add("R3", "marks on an imaginary vertex pair #" + std::to_string(n), [n] {
      auto r = imaginary_pair_curves().at(n);
      int w = -1;
      for (int v : r.base.curve.finite_vertices())
        if (!r.fixed_vertex(v)) w = v;
      add_pair(r, GraphPoint::at_vertex(w), GraphPoint::at_vertex(r.vertex_map[static_cast<std::size_t>(w)]), Reality::Imaginary);
      return check_R(r, k_for(r));
    });
  add("R4", "imaginary mark inside a real end", [] {
    auto r = doubled_end_curves().at(0);
    *std::find(r.tags.begin(), r.tags.end(), Reality::Real) = Reality::Imaginary;
    return check_R(r, {});
  });
  add("R4", "imaginary mark at infinity of a real end", [] {
    auto r = doubled_end_curves().at(1);
    int e = -1;
    for (int x : r.base.curve.ends())
      if (r.fixed_edge(x)) e = x;
    r.base.marks.push_back(Mark{GraphPoint::at_vertex(r.base.curve.graph.edges[static_cast<std::size_t>(e)].head)});
    r.mark_map.push_back(static_cast<int>(r.mark_map.size()));
    r.tags.push_back(Reality::Imaginary);
    return check_R(r, {});
  });
  for (std::size_t n = 0; n < 2; ++n)
    add("R5", "doubled end without imaginary marks #" + std::to_string(n), [n] {
      auto r = doubled_end_curves().at(n);
      std::fill(r.tags.begin(), r.tags.end(), Reality::Real);
      return check_R(r, {});
    });
  auto conic = [] { return with_identity_involution(plane_curves(2, 0).curves.front().curve); };
  add("R6", "conjugation is not an involution", [conic] {
    auto r = conic();
    auto k = k_for(r);
    k.points[1].conjugate = 0;
    return check_R(r, k);
  });
  add("R6", "real point with complex coefficients", [conic] {
    auto r = conic();
    auto k = k_for(r);
    k.points[0].initial[1].im = 3;
    return check_R(r, k);
  });
  add("R6", "real and imaginary points share a valuation", [conic] {
    auto r = conic();
    auto k = k_for(r);
    KPoint x = k.points[0], y = k.points[0];
    x.conjugate = static_cast<int>(k.points.size()) + 1;
    y.conjugate = static_cast<int>(k.points.size());
    x.initial[0].im = 1;
    y.initial[0].im = -1;
    k.points.push_back(x);
    k.points.push_back(y);
    return check_R(r, k);
  });
  add("R7", "map is not an automorphism", [] {
    auto r = with_identity_involution(tripod().marked());
    r.vertex_map = {0, 2, 1, 3};
    return check_R(r, {});
  });
  add("R7(i)", "imaginary mark over a real boundary point", [] {
    auto [m, k] = tangent_tripod(1);
    auto r = with_identity_involution(m);
    r.tags[0] = Reality::Imaginary;
    return check_R(r, k);
  });
  add("R7(ii)", "real marks over no points", [conic] { return check_R(conic(), {}); });
  add("R7(v)", "real end of even weight", [] {
    MarkedCurve m = tripod().mark_on(0, q(1)).mark_on(1, q(1)).marked();
    for (auto& d : m.curve.directions) d.weight = 2;
    auto r = with_identity_involution(m);
    return check_R(r, k_for(r));
  });

  add("subset", "point index out of range", [] {
    return detail::with_tuple(cubic_context(), [](CompatibleTuple& t) { t.points.push_back(999); });
  });
  add("subset", "multiplicity above mu", [] {
    return detail::with_tuple(cubic_context(), [](CompatibleTuple& t) { t.mu.begin()->second += 1; });
  });
  add("subset", "zero multiplicity", [] {
    return detail::with_tuple(cubic_context(), [](CompatibleTuple& t) { t.mu.begin()->second = 0; });
  });
  add("degree", "extra branch on a side", [] {
    return detail::with_tuple(cubic_context(), [](CompatibleTuple& t) { t.beta[0].add(1); });
  });
  add("degree", "side without branches", [] {
    return detail::with_tuple(cubic_context(), [](CompatibleTuple& t) { t.beta[1] = MultiplicityVector{}; });
  });
  for (std::int64_t w : {1, 2})
    add("tangency", "boundary point of a weight-" + std::to_string(w) + " end loses its branch", [w] {
      auto [m, k] = tangent_tripod(w);
      const int side = *k.points[0].valuation.side;
      return detail::with_tuple(make_context(m, k), [&](CompatibleTuple& t) {
        // Same first norm for w = 2, split into unit branches.
        MultiplicityVector split;
        if (w == 2) split.add(1, 2);
        t.beta[side] = split;
      });
    });
  add("genus", "genus above the interior point count", [] {
    return detail::with_tuple(cubic_context(), [](CompatibleTuple& t) { t.genus = 5; });
  });
  add("genus", "negative genus", [] {
    return detail::with_tuple(cubic_context(), [](CompatibleTuple& t) { t.genus = -1; });
  });
  add("euler", "genus raised by one", [] {
    return detail::with_tuple(cubic_context(1), [](CompatibleTuple& t) { t.genus = 1; });
  });
  add("euler", "one point dropped", [] {
    return detail::with_tuple(cubic_context(1), [](CompatibleTuple& t) {
      t.mu.erase(t.points.back());
      t.points.pop_back();
    });
  });

  add("A1", "interior point over no mark", [] {
    auto [m, k] = tangent_tripod(1);
    k.points.push_back({ConfigPoint::interior(pt(5, 5)), {}, 2});
    return detail::thrown([&] { multiplicity_function(m, k); });
  });
  add("A1", "two points under a simple mark", [] {
    auto [m, k] = tangent_tripod(1);
    k.points.push_back(k.points[1]);
    return detail::thrown([&] { multiplicity_function(m, k); });
  });
  add("A2", "simple and double marks share an image", [] {
    ForkCurve f;
    f.b.mark_vertex(f.a).mark_vertex(f.c, MarkClass::Double, Mt::First);
    KConfiguration k;
    k.points.push_back({ConfigPoint::interior(pt(1, 0)), {}, 0});
    return detail::thrown([&] { multiplicity_function(f.b.marked(), k); });
  });
  add("A2", "double mark over one point", [] {
    ForkCurve f;
    f.b.mark_vertex(f.a, MarkClass::Double, Mt::Both);
    KConfiguration k;
    k.points.push_back({ConfigPoint::interior(pt(1, 0)), {}, 0});
    return detail::thrown([&] { multiplicity_function(f.b.marked(), k); });
  });
  add("A3", "boundary point without a mark", [] {
    auto [m, k] = tangent_tripod(1);
    k.psi.clear();
    return detail::thrown([&] { multiplicity_function(m, k); });
  });
  add("A3", "boundary point sent to a finite mark", [] {
    auto [m, k] = tangent_tripod(1);
    k.psi[0] = 1;
    return detail::thrown([&] { multiplicity_function(m, k); });
  });
  add("A3", "boundary point away from the end", [] {
    auto [m, k] = tangent_tripod(1);
    k.points[0].valuation.parameter += 1;
    return detail::thrown([&] { multiplicity_function(m, k); });
  });
  add("A3", "mark at infinity without a boundary point", [] {
    auto [m, k] = tangent_tripod(1);
    k.points.erase(k.points.begin());
    k.psi.clear();
    k.points[0].conjugate = 0;
    return detail::thrown([&] { multiplicity_function(m, k); });
  });
  return out;
}

}  // namespace tropicount::testing
