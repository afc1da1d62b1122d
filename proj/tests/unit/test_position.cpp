#include "doctest.h"

#include "support/fixtures.hpp"
#include "tropicount/error.hpp"
#include "tropicount/position.hpp"

#include <numeric>
#include <random>

using namespace tropicount;
using namespace tropicount::testing;

namespace {

Configuration points(const LatticePolygon& delta, std::vector<RationalPoint> xs) {
  Configuration cfg;
  cfg.polygon = delta;
  for (auto& x : xs) cfg.points.push_back(ConfigPoint::interior(std::move(x)));
  return cfg;
}

// A(0,0) - B(1,1) - C(2,1) with five ends; the (1,1) end at C stays unmarked.
MarkedCurve chain() {
  CurveBuilder b;
  int a = b.vertex(pt(0, 0)), v = b.vertex(pt(1, 1)), c = b.vertex(pt(2, 1));
  b.edge(a, v);
  b.edge(v, c);
  int a1 = b.end(a, {-1, 0}), a2 = b.end(a, {0, -1}), b1 = b.end(v, {0, 1});
  int c1 = b.end(c, {0, -1});
  b.end(c, {1, 1});
  b.mark_on(a1, q(1)).mark_on(a2, q(1)).mark_on(b1, q(1)).mark_on(c1, q(1));
  return b.marked();
}

bool acyclic(const MarkedCurve& m, const Orientation& o) {
  const int n = m.curve.graph.vertex_count();
  for (int start = 0; start < n; ++start) {
    int v = start;
    for (int steps = 0; steps <= n; ++steps) {
      if (v < 0 || v >= n || !m.curve.graph.is_finite(v)) break;
      int e = o.outgoing[static_cast<std::size_t>(v)];
      if (e < 0) break;
      int next = o.toward[static_cast<std::size_t>(e)];
      if (next == v || next < 0) break;
      v = next;
      if (steps == n) return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("position") {
  TEST_CASE("stretched configurations") {
    MarkLayout two{2, {0, 0, 0}};
    auto a = stretched_config(triangle(1), two, 0);
    REQUIRE(a.points.size() == 2);
    CHECK(a.points[0] != a.points[1]);
    auto b = stretched_config(triangle(1), two, 0);
    CHECK(a.points == b.points);
    CHECK(stretched_config(triangle(1), two, 1).points != a.points);

    auto cubic = stretched_config(triangle(3), default_layout(triangle(3), 0), 0);
    CHECK(cubic.points.size() == 8);
    // Gaps between consecutive points grow at least geometrically.
    for (std::size_t i = 2; i < cubic.points.size(); ++i) {
      Rational g1 = cubic.points[i - 1].point.x - cubic.points[i - 2].point.x;
      Rational g2 = cubic.points[i].point.x - cubic.points[i - 1].point.x;
      CHECK(g2 >= 2 * g1);
    }
  }

  TEST_CASE("line through two points") {
    CombinatorialType line = type_of(tripod().mark_on(0, q(1)).mark_on(1, q(1)).marked());
    auto ok = solve_type(line, points(triangle(1), {pt(0, 1), pt(1, 0)}));
    REQUIRE(ok.status == SolveStatus::Solved);
    CHECK(ok.curve->curve.position(0) == pt(1, 1));
    CHECK(validate_ppt(ok.curve->curve).ok());

    auto bad = solve_type(line, points(triangle(1), {pt(1, 0), pt(0, 1)}));
    CHECK(bad.status != SolveStatus::Solved);
    CHECK_FALSE(bad.curve.has_value());
  }

  TEST_CASE("end marked at infinity follows its boundary point") {
    auto delta = triangle(1);
    const int side = delta.side_with_normal({-1, 0});
    REQUIRE(side >= 0);
    CurveBuilder b = tripod();
    b.mark_infinity(0).mark_on(1, q(1));
    CombinatorialType t = type_of(b.marked());
    Configuration cfg;
    cfg.polygon = delta;
    const Rational param = boundary_parameter({-1, 0}, pt(0, q(5, 2)));
    cfg.points = {ConfigPoint::boundary(side, param), ConfigPoint::interior(pt(4, 1))};
    auto s = solve_type(t, cfg);
    REQUIRE(s.status == SolveStatus::Solved);
    CHECK(s.curve->curve.position(0).y == q(5, 2));
    auto where = compactify_end(s.curve->curve, 0, delta);
    CHECK(where.index == side);
    CHECK(where.parameter == param);
  }

  TEST_CASE("non-regular types are rejected") {
    CombinatorialType t = type_of(tripod().mark_on(0, q(1)).marked());
    CHECK_THROWS_AS(solve_type(t, points(triangle(1), {pt(0, 0)})), HypothesisError);
  }

  TEST_CASE("solutions do not depend on the equation order") {
    std::mt19937_64 rng(31);
    for (int d = 2; d <= 3; ++d) {
      auto r = plane_curves(d, 0, 3);
      for (const auto& c : r.curves) {
        CombinatorialType t = type_of(c.curve);
        std::vector<std::size_t> order(equation_count(t));
        std::iota(order.begin(), order.end(), 0);
        for (int trial = 0; trial < 4; ++trial) {
          std::shuffle(order.begin(), order.end(), rng);
          auto s = solve_type(t, r.config, &order);
          REQUIRE(s.status == SolveStatus::Solved);
          CHECK(canonical_form(*s.curve) == c.canonical);
          CHECK(s.curve->curve.positions == c.curve.curve.positions);
          CHECK(validate_ppt(s.curve->curve).ok());
          CHECK(marks_exhaust_preimages(*s.curve, r.config));
        }
      }
    }
  }

  TEST_CASE("orientation") {
    auto o = orient_components(tripod().mark_on(0, q(1)).mark_on(1, q(1)).marked());
    CHECK(o.outgoing[0] == 2);

    MarkedCurve m = chain();
    auto oc = orient_components(m);
    CHECK(oc.outgoing[0] == 0);
    CHECK(oc.outgoing[1] == 1);
    CHECK(oc.outgoing[2] == 6);
    CHECK(acyclic(m, oc));

    CHECK_THROWS_AS(orient_components(tripod().mark_on(0, q(1)).marked()), HypothesisError);

    for (const auto& c : plane_curves(3, 0).curves) {
      auto oe = orient_components(c.curve);
      CHECK(acyclic(c.curve, oe));
      for (int v : c.curve.curve.finite_vertices()) {
        bool marked = false;
        for (const auto& k : c.curve.marks) marked = marked || (k.point.is_vertex() && k.point.vertex == v);
        if (!marked) CHECK(oe.outgoing[static_cast<std::size_t>(v)] >= 0);
      }
    }
  }

  TEST_CASE("regularity") {
    CHECK(check_regular(tripod().mark_on(0, q(1)).mark_on(1, q(1)).marked()));
    CHECK_FALSE(check_regular(tripod().mark_on(0, q(1)).mark_on(1, q(1)).mark_on(2, q(1)).marked()));
    CurveBuilder b;
    int a = b.vertex(pt(0, 0)), c = b.vertex(pt(1, 0));
    b.edge(a, c);
    b.edge(a, c);
    int e1 = b.end(a, {-1, 1});
    b.end(a, {-1, -1});
    b.end(c, {1, 1});
    b.end(c, {1, -1});
    b.mark_on(e1, q(1));
    CHECK_FALSE(check_regular(b.marked()));
  }

  TEST_CASE("delta genericity") {
    auto delta = triangle(1);
    WeightedConfiguration stretched{stretched_config(delta, MarkLayout{2, {0, 0, 0}}, 0), {1, 1}};
    CHECK(check_delta_generic(stretched, delta, 100000).verdict == GenericityVerdict::Generic);

    // Three points on the ends of one tropical line.
    WeightedConfiguration on_line{points(delta, {pt(-1, 0), pt(0, -1), pt(1, 1)}), {1, 1, 1}};
    auto w = check_delta_generic(on_line, delta, 100000);
    CHECK(w.verdict == GenericityVerdict::Witness);
    REQUIRE(w.witness.has_value());
    CHECK(w.witness->curve.position(w.witness->curve.finite_vertices().front()) == pt(0, 0));
    CHECK(w.witness_weights == std::vector<int>{1, 1, 1});

    // Two points never carry an end-marked curve: every such curve has at least three ends.
    WeightedConfiguration pair{points(delta, {pt(0, 0), pt(1, 0)}), {1, 1}};
    CHECK(check_delta_generic(pair, delta, 100000).verdict == GenericityVerdict::Generic);

    auto big = triangle(12);
    WeightedConfiguration many{stretched_config(big, default_layout(big, 0), 0), std::vector<int>(35, 1)};
    CHECK(check_delta_generic(many, big, 0).verdict == GenericityVerdict::Inconclusive);
  }
}
