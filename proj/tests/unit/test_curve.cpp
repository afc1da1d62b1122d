#include "doctest.h"

#include "support/fixtures.hpp"
#include "tropicount/curve.hpp"
#include "tropicount/error.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace tropicount;
using namespace tropicount::testing;

namespace {

std::vector<WeightedDirection> sorted(std::vector<WeightedDirection> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Vertex with the given outgoing ends.
CurveBuilder star(const std::vector<WeightedDirection>& ends) {
  CurveBuilder b;
  int v = b.vertex(pt(0, 0));
  for (const auto& d : ends) b.end(v, d.primitive, d.weight);
  return b;
}

// Two vertices joined by two parallel edges of weight 1.
MarkedCurve doubled_segment() {
  CurveBuilder b;
  int a = b.vertex(pt(0, 0)), c = b.vertex(pt(1, 0));
  b.edge(a, c);
  b.edge(a, c);
  b.end(a, {-1, 1});
  b.end(a, {-1, -1});
  b.end(c, {1, 1});
  b.end(c, {1, -1});
  return b.marked();
}

}  // namespace

TEST_SUITE("curve") {
  TEST_CASE("genus") {
    CHECK(genus(tripod().curve().graph) == 0);

    AbstractGraph two;
    for (int copy = 0; copy < 2; ++copy) {
      int base = two.vertex_count();
      two.vertices.push_back(VertexKind::Finite);
      for (int i = 0; i < 3; ++i) {
        two.vertices.push_back(VertexKind::AtInfinity);
        two.edges.push_back({base, two.vertex_count() - 1, Length::infinite()});
      }
    }
    CHECK(genus(two) == -1);

    AbstractGraph theta;
    for (int i = 0; i < 3; ++i) theta.vertices.push_back(VertexKind::Finite);
    for (int i = 0; i < 3; ++i) {
      theta.edges.push_back({i, (i + 1) % 3, Length(Rational(1))});
      theta.vertices.push_back(VertexKind::AtInfinity);
      theta.edges.push_back({i, theta.vertex_count() - 1, Length::infinite()});
    }
    CHECK(genus(theta) == 1);
  }

  TEST_CASE("genus does not depend on the encoding") {
    std::mt19937_64 rng(2);
    for (const auto& c : plane_curves(3, 1).curves) {
      const auto& m = c.curve;
      std::vector<int> vp(m.curve.graph.vertices.size()), ep(m.curve.graph.edges.size());
      std::iota(vp.begin(), vp.end(), 0);
      std::iota(ep.begin(), ep.end(), 0);
      std::shuffle(vp.begin(), vp.end(), rng);
      std::shuffle(ep.begin(), ep.end(), rng);
      MarkedCurve r = relabel(m, vp, ep);
      CHECK(genus(r.curve.graph) == genus(m.curve.graph));
      CHECK(validate_ppt(r.curve).ok());
      CHECK(isomorphic(r, m));
      CHECK(canonical_form(r) == canonical_form(m));
    }
  }

  TEST_CASE("validation of balancing and end sums") {
    CHECK(validate_ppt(tripod().curve()).ok());
    auto bad = star({dir(1, 0), dir(0, 1), dir(-1, 0)}).curve();
    auto report = validate_ppt(bad);
    CHECK(report.has("balancing"));
    bool cites_vertex = false;
    for (const auto& i : report.issues) cites_vertex = cites_vertex || (i.rule == "balancing" && i.location == "vertex 0");
    CHECK(cites_vertex);
    for (int d = 1; d <= 3; ++d)
      for (const auto& c : plane_curves(d, 0).curves) {
        CHECK(validate_ppt(c.curve.curve).ok());
        LatticePoint sum;
        for (const auto& w : degree(c.curve.curve)) sum = sum + w.vector();
        CHECK(is_zero(sum));
      }
  }

  TEST_CASE("malformed graphs are structural errors") {
    PPTCurve c = tripod().curve();
    c.graph.edges[0].head = 17;
    CHECK_THROWS_AS(check_structure(c), StructuralError);
  }

  TEST_CASE("rotated moment relation on random end points") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> t(0, 1000);
    for (const auto& c : plane_curves(3, 0).curves) {
      const PPTCurve& curve = c.curve.curve;
      for (int trial = 0; trial < 5; ++trial) {
        EndPoints pts;
        for (int e : curve.ends()) {
          pts.ends.push_back(e);
          pts.points.push_back(curve.point_at(e, Rational(t(rng), 7)));
        }
        CHECK(validate_ppt(curve, &pts).ok());
        // Moving one point off its end image is caught.
        pts.points[0] = pts.points[0] + RationalPoint(rotate_ccw(curve.directions[static_cast<std::size_t>(pts.ends[0])].primitive));
        CHECK(validate_ppt(curve, &pts).has("moment"));
      }
    }
  }

  TEST_CASE("degree") {
    CHECK(sorted(degree(tripod().curve())) == sorted({dir(-1, 0), dir(0, -1), dir(1, 1)}));
    auto conics = plane_curves(2, 0);
    REQUIRE(conics.curves.size() == 1);
    CHECK(sorted(degree(conics.curves[0].curve.curve)) ==
          sorted({dir(-1, 0), dir(-1, 0), dir(0, -1), dir(0, -1), dir(1, 1), dir(1, 1)}));
    auto weighted = star({dir(1, 1, 2), dir(-1, 0, 2), dir(0, -1, 2)}).curve();
    auto ds = degree(weighted);
    CHECK(std::count(ds.begin(), ds.end(), dir(1, 1, 2)) == 1);
  }

  TEST_CASE("degree is invariant under translation") {
    for (const auto& c : plane_curves(3, 0).curves) {
      PPTCurve moved = c.curve.curve;
      for (auto& p : moved.positions)
        if (p) *p = *p + pt(q(5, 3), q(-7, 2));
      CHECK(sorted(degree(moved)) == sorted(degree(c.curve.curve)));
      CHECK(validate_ppt(moved).ok());
    }
  }

  TEST_CASE("classification") {
    CHECK(classify(tripod().curve()).kind == CurveClass::Simple);
    for (const auto& c : plane_curves(3, 0).curves) CHECK(classify(c.curve.curve).kind == CurveClass::Simple);

    auto four = classify(star({dir(1, 1), dir(-1, 0), dir(-1, 0), dir(1, -1)}).curve());
    CHECK(four.kind == CurveClass::PseudoSimple);
    REQUIRE(four.high_valency.size() == 1);
    const auto& tags = four.high_valency[0];
    for (std::size_t i = 0; i < tags.edges.size(); ++i)
      CHECK((tags.tags[i] == EdgeTag::Multiple) == (tags.edges[i] == 1 || tags.edges[i] == 2));

    CHECK(classify(star({dir(1, 1, 2), dir(-1, 0), dir(-1, 0), dir(0, -1), dir(0, -1)}).curve()).kind ==
          CurveClass::PseudoSimple);
    CHECK(classify(star({dir(1, 0), dir(0, 1), dir(-1, 0), dir(0, -1)}).curve()).kind == CurveClass::Neither);
  }

  TEST_CASE("push forward") {
    auto t = push_forward(tripod().curve());
    CHECK(t.vertices.size() == 1);
    CHECK(t.edges.size() == 3);
    CHECK(validate_ept(t).ok());

    auto merged = push_forward(doubled_segment().curve);
    CHECK(validate_ept(merged).ok());
    std::size_t segments = 0;
    for (const auto& e : merged.edges)
      if (e.kind == EPTEdge::Kind::Segment) {
        ++segments;
        CHECK(e.weight == 2);
      }
    CHECK(segments == 1);

    // Images may be split at crossings and overlaps merge: every edge of the curve is
    // still covered by image edges of the same direction and at least its weight, and the
    // rays carry the end weights.
    for (const auto& c : plane_curves(3, 0).curves) {
      const PPTCurve& pc = c.curve.curve;
      auto img = push_forward(pc);
      CHECK(validate_ept(img).ok());
      auto covered = [&](const RationalPoint& x, LatticePoint u, std::int64_t w) {
        for (const auto& e : img.edges) {
          if (e.kind == EPTEdge::Kind::Line || cross(e.direction, u) != 0 || e.weight < w) continue;
          RationalPoint rel = x - img.vertices[static_cast<std::size_t>(e.from)];
          if (cross(e.direction, rel) != 0) continue;
          Rational t = dot(e.direction, rel);
          if (t < 0) continue;
          if (e.kind == EPTEdge::Kind::Ray) return true;
          RationalPoint end = img.vertices[static_cast<std::size_t>(e.to)] - img.vertices[static_cast<std::size_t>(e.from)];
          if (t <= dot(e.direction, end)) return true;
        }
        return false;
      };
      for (int e = 0; e < pc.graph.edge_count(); ++e) {
        const auto& ed = pc.graph.edges[static_cast<std::size_t>(e)];
        Rational at = pc.is_end(e) ? Rational(1000) : ed.length.value() / 2;
        CHECK(covered(pc.point_at(e, at), pc.directions[static_cast<std::size_t>(e)].primitive, pc.weight(e)));
      }
      std::int64_t rays = 0, ends = 0;
      for (const auto& e : img.edges)
        if (e.kind == EPTEdge::Kind::Ray) rays += e.weight;
      for (int e : pc.ends()) ends += pc.weight(e);
      CHECK(rays == ends);
    }
  }

  TEST_CASE("compactification of ends") {
    auto unit = LatticePolygon::hull({{0, 0}, {1, 0}, {0, 1}});
    auto a = tripod(pt(3, 1)).curve();
    auto b = tripod(pt(3, 2)).curve();
    auto la = compactify_end(a, 0, unit), lb = compactify_end(b, 0, unit);
    CHECK(la.kind == BoundaryLocation::Kind::Side);
    CHECK(unit.sides()[static_cast<std::size_t>(la.index)].normal == LatticePoint{-1, 0});
    CHECK(la.index == lb.index);
    CHECK(la.parameter != lb.parameter);

    auto diag = compactify_end(a, 2, unit);
    CHECK(diag.kind == BoundaryLocation::Kind::Side);
    CHECK(unit.sides()[static_cast<std::size_t>(diag.index)].normal == LatticePoint{1, 1});

    auto skew = star({dir(2, 1), dir(-1, 0), dir(-1, -1)}).curve();
    CHECK(compactify_end(skew, 0, unit).kind == BoundaryLocation::Kind::Corner);
  }

  TEST_CASE("quotient and doubling") {
    MarkedCurve line = tripod().mark_on(0, q(1)).mark_on(1, q(1)).marked();
    CHECK(isomorphic(quotient_by_involution(with_identity_involution(line)), line));
    auto same = double_curve(line, {});
    for (int v = 0; v < line.curve.graph.vertex_count(); ++v) CHECK(same.fixed_vertex(v));

    CurveBuilder b;
    int v = b.vertex(pt(0, 0));
    int w2 = b.end(v, {1, 1}, 2);
    b.end(v, {-1, 0}, 2);
    b.end(v, {0, -1}, 2);
    b.mark_on(w2, q(1, 2));
    auto r = double_curve(b.marked(), {w2});
    CHECK(r.base.curve.graph.edge_count() == 4);
    CHECK(r.base.curve.weight(w2) == 1);
    const int partner = r.edge_map[static_cast<std::size_t>(w2)];
    CHECK(partner != w2);
    CHECK(r.base.curve.weight(partner) == 1);
    CHECK(r.base.marks.size() == 2);
    CHECK(r.mark_map[0] == 1);
    CHECK_NOTHROW(check_involution(r));

    MarkedCurve back = quotient_by_involution(r);
    CHECK(back.marks.size() == 1);
    CHECK(isomorphic(back, b.marked()));

    CHECK_THROWS_AS(double_curve(line, {0}), Error);
  }

  TEST_CASE("quotient of a doubled curve is the original") {
    // A vertex pair hanging off the real part by an even edge.
    {
      CurveBuilder b;
      int v0 = b.vertex(pt(0, 0)), w0 = b.vertex(pt(2, 2));
      int e = b.edge(v0, w0, 2);
      int ea = b.end(v0, {1, 0});
      b.end(v0, {-3, -2});
      int g1 = b.end(w0, {0, 1}, 2), g2 = b.end(w0, {1, 0}, 2);
      b.mark_on(g1, q(1)).mark_on(g2, q(1)).mark_on(ea, q(1));
      auto r = double_curve(b.marked(), {e, g1, g2});
      CHECK(r.base.curve.graph.vertex_count() == b.curve().graph.vertex_count() + 3);
      CHECK(isomorphic(quotient_by_involution(r), b.marked()));
      CHECK(validate_ppt(r.base.curve).ok());
    }
    for (const auto& c : plane_curves(4, 0).curves) {
      std::vector<int> even;
      for (int e = 0; e < c.curve.curve.graph.edge_count(); ++e)
        if (c.curve.curve.weight(e) % 2 == 0) even.push_back(e);
      if (even.empty()) continue;
      auto r = double_curve(c.curve, even);
      CHECK(validate_ppt(r.base.curve).ok());
      CHECK(isomorphic(quotient_by_involution(r), c.curve));
    }
  }
}
