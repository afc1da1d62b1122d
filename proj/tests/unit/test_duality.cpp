#include "doctest.h"

#include "oracles/geometry.hpp"
#include "oracles/lower_hull.hpp"
#include "support/fixtures.hpp"
#include "tropicount/duality.hpp"
#include "tropicount/error.hpp"

#include <map>
#include <random>
#include <set>

using namespace tropicount;
using namespace tropicount::testing;

namespace {

// Boundary walk oracle: each end is an outer normal, so turned a quarter counterclockwise
// it is a step of the boundary walk; steps sorted by angle trace the polygon.
LatticePolygon walk_polygon(std::vector<WeightedDirection> ends) {
  std::vector<LatticePoint> steps;
  for (const auto& d : ends) steps.push_back(rotate_ccw(d.vector()));
  std::sort(steps.begin(), steps.end(), [](LatticePoint a, LatticePoint b) { return angle_less(a, b); });
  std::vector<LatticePoint> pts{{0, 0}};
  for (auto s : steps) pts.push_back(pts.back() + s);
  REQUIRE(pts.back() == LatticePoint{0, 0});
  return LatticePolygon::hull(pts).canonical();
}

PPTCurve crossing_with_vertex() {
  CurveBuilder b;
  int a = b.vertex(pt(0, 0));
  b.end(a, {-1, 0});
  b.end(a, {0, -1});
  b.end(a, {1, 1});
  int c = b.vertex(pt(1, 2));
  b.end(c, {-1, -2});
  b.end(c, {1, 1});
  b.end(c, {0, 1});
  return b.curve();
}

PPTCurve transverse_node() {
  CurveBuilder b;
  int a = b.vertex(pt(0, 0));
  b.end(a, {-1, 0});
  b.end(a, {0, -1});
  b.end(a, {1, 1});
  int c = b.vertex(pt(3, 1));
  b.end(c, {-1, 0});
  b.end(c, {0, -1});
  b.end(c, {1, 1});
  return b.curve();
}

}  // namespace

TEST_SUITE("duality") {
  TEST_CASE("newton polygons") {
    CHECK(newton_polygon(tripod().curve()) == LatticePolygon::hull({{0, 0}, {1, 0}, {0, 1}}));
    for (int d = 1; d <= 4; ++d) {
      std::vector<WeightedDirection> ends;
      for (int i = 0; i < d; ++i) ends.insert(ends.end(), {dir(-1, 0), dir(0, -1), dir(1, 1)});
      CHECK(newton_polygon(ends) == walk_polygon(ends));
      CHECK(newton_polygon(ends) == triangle(d));
    }
    std::vector<WeightedDirection> doubled{dir(-1, 0, 2), dir(0, -1, 2), dir(1, 1, 2)};
    CHECK(newton_polygon(doubled) == walk_polygon(doubled));
    CHECK(newton_polygon(doubled) == triangle(2));
  }

  TEST_CASE("dual subdivisions") {
    auto line = dual_subdivision(push_forward(tripod().curve()));
    CHECK(line.polygon == triangle(1));
    CHECK(line.cells.size() == 1);

    auto conics = plane_curves(2, 0);
    REQUIRE(conics.curves.size() == 1);
    auto conic = dual_subdivision(push_forward(conics.curves[0].curve.curve));
    CHECK(conic.cells.size() == 4);
    std::int64_t total = 0;
    for (const auto& c : conic.cells) {
      CHECK(lattice_volume(c) == 1);
      total += lattice_volume(c);
    }
    CHECK(total == 4);

    // A weight-2 edge is dual to a side of lattice length 2.
    CurveBuilder b;
    int a = b.vertex(pt(0, 0)), c = b.vertex(pt(1, 0));
    b.edge(a, c, 2);
    b.end(a, {-1, 1});
    b.end(a, {-1, -1});
    b.end(c, {1, 1});
    b.end(c, {1, -1});
    auto s = dual_subdivision(push_forward(b.curve()));
    bool long_side = false;
    for (const auto& cell : s.cells)
      for (const auto& side : cell.sides()) long_side = long_side || (side.length == 2 && side.normal.y == 0);
    CHECK(long_side);
  }

  TEST_CASE("duality round trip and perturbations") {
    for (int d = 1; d <= 4; ++d)
      for (const auto& c : plane_curves(d, 0).curves) {
        auto t = push_forward(c.curve.curve);
        auto s = dual_subdivision(t);
        CHECK(verify_duality(t, s).ok());
        std::int64_t total = 0;
        for (const auto& cell : s.cells) total += lattice_volume(cell);
        CHECK(total == lattice_volume(s.polygon));
        CHECK(newton_polygon(c.curve.curve) == s.polygon.canonical());
        CHECK(is_nodal(s));
      }

    auto t = push_forward(plane_curves(3, 0).curves.front().curve.curve);
    auto s = dual_subdivision(t);
    auto missing = s;
    missing.cells.pop_back();
    CHECK(verify_duality(t, missing).has("volume"));

    auto reweighted = t;
    for (auto& e : reweighted.edges)
      if (e.kind == EPTEdge::Kind::Segment) {
        e.weight = 2;
        break;
      }
    CHECK(verify_duality(reweighted, s).has("weight-length"));
  }

  TEST_CASE("vertex cells") {
    auto simple = vertex_cell_decomposition(tripod().curve(), pt(0, 0));
    REQUIRE(simple.size() == 1);
    CHECK(simple[0].canonical() == triangle(1));

    auto node = vertex_cell_decomposition(transverse_node(), pt(1, 1));
    REQUIRE(node.size() == 2);
    CHECK(node[0].dimension() == 1);
    CHECK(node[1].dimension() == 1);
    CHECK(is_nodal({minkowski_sum(node), {minkowski_sum(node)}, {}}));

    PPTCurve mixed = crossing_with_vertex();
    auto parts = vertex_cell_decomposition(mixed, pt(0, 0));
    REQUIRE(parts.size() == 2);
    int triangles = 0, segments = 0;
    for (const auto& p : parts) (p.dimension() == 2 ? triangles : segments)++;
    CHECK(triangles == 1);
    CHECK(segments == 1);
    auto s = dual_subdivision(push_forward(mixed));
    const auto sum = minkowski_sum(parts).canonical();
    bool found = false;
    for (const auto& cell : s.cells) found = found || cell.canonical() == sum;
    CHECK(found);

    CHECK_THROWS_AS(vertex_cell_decomposition(tripod().curve(), pt(5, 7)), Error);
  }

  TEST_CASE("nodality") {
    auto unit = triangle(1);
    CHECK(is_nodal({triangle(2), {unit, unit.translated({1, 0}), unit.translated({0, 1}),
                                  LatticePolygon::hull({{1, 0}, {1, 1}, {0, 1}})},
                    {}}));
    auto trapezoid = LatticePolygon::hull({{0, 0}, {2, 0}, {1, 1}, {0, 1}});
    CHECK_FALSE(is_nodal({trapezoid, {trapezoid}, {}}));
    auto square = LatticePolygon::hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    auto tri = LatticePolygon::hull({{1, 0}, {2, 0}, {1, 1}});
    CHECK(is_nodal({LatticePolygon::hull({{0, 0}, {2, 0}, {1, 1}, {0, 1}}), {square, tri}, {}}));
  }

  TEST_CASE("tropicalization") {
    ValuatedPolynomial line;
    line.valuation = {{{0, 0}, Rational(0)}, {{1, 0}, Rational(0)}, {{0, 1}, Rational(0)}};
    auto t = tropicalize(line);
    REQUIRE(t.curve.vertices.size() == 1);
    CHECK(t.curve.vertices[0] == pt(0, 0));

    line.valuation[{0, 1}] = Rational(1);
    t = tropicalize(line);
    REQUIRE(t.curve.vertices.size() == 1);
    CHECK(t.curve.vertices[0] == pt(0, 1));

    ValuatedPolynomial conic;
    conic.valuation = {{{0, 0}, q(0)}, {{1, 0}, q(0)}, {{0, 1}, q(0)}, {{2, 0}, q(2)}, {{1, 1}, q(1)}, {{0, 2}, q(2)}};
    auto tc = tropicalize(conic);
    CHECK(tc.subdivision.cells.size() == 4);
    CHECK(static_cast<std::int64_t>(tc.subdivision.cells.size()) == oracle::lower_hull_face_count(conic.valuation));
    CHECK(verify_duality(tc.curve, tc.subdivision).ok());

    ValuatedPolynomial single;
    single.valuation = {{{1, 1}, q(0)}};
    CHECK_THROWS_WITH_AS(tropicalize(single), "curve is empty", Error);
  }

  TEST_CASE("tropicalization matches the lower hull and ignores affine shifts") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
      auto p = oracle::random_polynomial(rng, 2 + trial % 2);
      auto t = tropicalize(p);
      CHECK(verify_duality(t.curve, t.subdivision).ok());
      std::int64_t total = 0;
      for (const auto& cell : t.subdivision.cells) total += lattice_volume(cell);
      CHECK(total == lattice_volume(t.subdivision.polygon));
      CHECK(static_cast<std::int64_t>(t.subdivision.cells.size()) == oracle::lower_hull_face_count(p.valuation));

      auto shifted = p;
      const Rational k(trial - 7, 3), a(2 * trial + 1, 5), b(-trial, 2);
      for (auto& [w, v] : shifted.valuation) v += k + a * Rational(w.x) + b * Rational(w.y);
      CHECK(canonical_ept(tropicalize(shifted).curve) == canonical_ept(t.curve));
    }
  }
}
