#include "tropicount/curve.hpp"

#include "tropicount/error.hpp"

#include <algorithm>
#include <set>

namespace tropicount {

const Rational& Length::value() const {
  if (!finite_) throw Error("infinite length has no value");
  return value_;
}

std::vector<std::vector<int>> AbstractGraph::incidence() const {
  std::vector<std::vector<int>> inc(vertices.size());
  for (int e = 0; e < edge_count(); ++e) {
    const auto& ed = edges[static_cast<std::size_t>(e)];
    inc.at(static_cast<std::size_t>(ed.tail)).push_back(e);
    if (ed.head != ed.tail) inc.at(static_cast<std::size_t>(ed.head)).push_back(e);
  }
  return inc;
}

int genus(const AbstractGraph& g) {
  int finite_vertices = 0, bounded = 0;
  for (auto k : g.vertices)
    if (k == VertexKind::Finite) ++finite_vertices;
  for (const auto& e : g.edges)
    if (g.is_finite(e.tail) && g.is_finite(e.head)) ++bounded;
  return bounded - finite_vertices + 1;
}

void check_structure(const AbstractGraph& g) {
  const int n = g.vertex_count();
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edges[static_cast<std::size_t>(e)];
    const std::string where = "edge " + std::to_string(e);
    if (ed.tail < 0 || ed.tail >= n || ed.head < 0 || ed.head >= n)
      throw StructuralError(where + ": endpoint index out of range");
    if (ed.tail == ed.head) throw StructuralError(where + ": loop edges are not allowed");
    bool tf = g.is_finite(ed.tail), hf = g.is_finite(ed.head);
    if (!tf && !hf) throw StructuralError(where + ": joins two points at infinity");
    if (tf && hf) {
      if (ed.length.is_infinite()) throw StructuralError(where + ": finite edge with infinite length");
      if (ed.length.value() <= 0) throw StructuralError(where + ": non-positive length");
    } else if (!ed.length.is_infinite()) {
      throw StructuralError(where + ": end with finite length");
    }
  }
  auto inc = g.incidence();
  for (int v = 0; v < n; ++v) {
    auto val = inc[static_cast<std::size_t>(v)].size();
    const std::string where = "vertex " + std::to_string(v);
    if (val == 0) throw StructuralError(where + ": isolated");
    if (!g.is_finite(v) && val != 1) throw StructuralError(where + ": point at infinity must be univalent");
    if (g.is_finite(v) && val == 2) throw StructuralError(where + ": divalent vertex");
  }
}

bool PPTCurve::is_end(int e) const {
  const auto& ed = graph.edges.at(static_cast<std::size_t>(e));
  return !graph.is_finite(ed.tail) || !graph.is_finite(ed.head);
}

int PPTCurve::other_end(int e, int v) const {
  const auto& ed = graph.edges.at(static_cast<std::size_t>(e));
  if (ed.tail == v) return ed.head;
  if (ed.head == v) return ed.tail;
  throw StructuralError("vertex " + std::to_string(v) + " is not an endpoint of edge " + std::to_string(e));
}

WeightedDirection PPTCurve::outgoing_direction(int e, int v) const {
  const auto& ed = graph.edges.at(static_cast<std::size_t>(e));
  auto d = directions.at(static_cast<std::size_t>(e));
  if (ed.tail == v) return d;
  if (ed.head == v) return {-d.primitive, d.weight};
  throw StructuralError("vertex " + std::to_string(v) + " is not an endpoint of edge " + std::to_string(e));
}

LatticePoint PPTCurve::outgoing(int e, int v) const { return outgoing_direction(e, v).vector(); }

const RationalPoint& PPTCurve::position(int v) const {
  const auto& p = positions.at(static_cast<std::size_t>(v));
  if (!p) throw StructuralError("vertex " + std::to_string(v) + " has no position");
  return *p;
}

RationalPoint PPTCurve::point_at(int e, const Rational& offset) const {
  const auto& ed = graph.edges.at(static_cast<std::size_t>(e));
  return position(ed.tail) + offset * directions.at(static_cast<std::size_t>(e)).vector();
}

std::vector<int> PPTCurve::finite_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < graph.vertex_count(); ++v)
    if (graph.is_finite(v)) out.push_back(v);
  return out;
}

std::vector<int> PPTCurve::ends() const {
  std::vector<int> out;
  for (int e = 0; e < graph.edge_count(); ++e)
    if (is_end(e)) out.push_back(e);
  return out;
}

std::vector<int> PPTCurve::bounded_edges() const {
  std::vector<int> out;
  for (int e = 0; e < graph.edge_count(); ++e)
    if (!is_end(e)) out.push_back(e);
  return out;
}

void check_structure(const PPTCurve& c) {
  check_structure(c.graph);
  if (c.positions.size() != c.graph.vertices.size())
    throw StructuralError("positions do not match the vertex count");
  if (c.directions.size() != c.graph.edges.size())
    throw StructuralError("directions do not match the edge count");
  for (int v = 0; v < c.graph.vertex_count(); ++v)
    if (c.graph.is_finite(v) != c.positions[static_cast<std::size_t>(v)].has_value())
      throw StructuralError("vertex " + std::to_string(v) + ": finite vertices need a position, others none");
  for (int e = 0; e < c.graph.edge_count(); ++e) {
    const auto& d = c.directions[static_cast<std::size_t>(e)];
    if (d.weight < 1) throw StructuralError("edge " + std::to_string(e) + ": weight must be positive");
    if (is_zero(d.primitive) || primitive_decompose(d.primitive).weight != 1)
      throw StructuralError("edge " + std::to_string(e) + ": direction is not primitive");
    if (!c.graph.is_finite(c.graph.edges[static_cast<std::size_t>(e)].tail))
      throw StructuralError("edge " + std::to_string(e) + ": an end must have its finite vertex as tail");
  }
}

ValidationReport validate_ppt(const PPTCurve& c, const EndPoints* end_points) {
  check_structure(c);
  ValidationReport report;
  auto inc = c.graph.incidence();
  for (int e : c.bounded_edges()) {
    const auto& ed = c.graph.edges[static_cast<std::size_t>(e)];
    RationalPoint expected = c.position(ed.tail) + ed.length.value() * c.directions[static_cast<std::size_t>(e)].vector();
    if (!(expected == c.position(ed.head)))
      report.add("affine", "edge " + std::to_string(e), "endpoint positions differ from length times weighted direction");
  }
  for (int v : c.finite_vertices()) {
    LatticePoint sum{};
    bool spans = false;
    const auto& ev = inc[static_cast<std::size_t>(v)];
    for (std::size_t i = 0; i < ev.size(); ++i) {
      sum = sum + c.outgoing(ev[i], v);
      for (std::size_t j = i + 1; j < ev.size() && !spans; ++j)
        spans = cross(c.outgoing(ev[i], v), c.outgoing(ev[j], v)) != 0;
    }
    if (!is_zero(sum))
      report.add("balancing", "vertex " + std::to_string(v),
                 "weighted outgoing directions sum to (" + std::to_string(sum.x) + "," + std::to_string(sum.y) + ")");
    if (!spans) report.add("nondegeneracy", "vertex " + std::to_string(v), "outgoing directions do not span the plane");
  }
  LatticePoint end_sum{};
  Rational moment = 0;
  for (int e : c.ends()) {
    LatticePoint m = c.directions[static_cast<std::size_t>(e)].vector();
    end_sum = end_sum + m;
    RationalPoint x = c.position(c.graph.edges[static_cast<std::size_t>(e)].tail);
    if (end_points) {
      for (std::size_t i = 0; i < end_points->ends.size(); ++i) {
        if (end_points->ends[i] != e) continue;
        const auto& p = end_points->points.at(i);
        RationalPoint d = p - x;
        if (cross(m, d) != 0 || dot(m, d) < 0)
          report.add("moment", "edge " + std::to_string(e), "chosen point is not on the end image");
        x = p;
      }
    }
    moment += cross(m, x);
  }
  if (!is_zero(end_sum)) report.add("end-sum", "curve", "end directions do not sum to zero");
  if (end_sum == LatticePoint{} && moment != 0)
    report.add("moment", "curve", "rotated moment sum over ends is " + to_string(moment));
  return report;
}

std::vector<WeightedDirection> degree(const PPTCurve& c) {
  std::vector<WeightedDirection> out;
  for (int e : c.ends()) out.push_back(c.directions[static_cast<std::size_t>(e)]);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_multiple_at(const PPTCurve& c, int e, int v) {
  auto inc = c.graph.incidence();
  LatticePoint u = c.outgoing_direction(e, v).primitive;
  for (int f : inc.at(static_cast<std::size_t>(v)))
    if (f != e && c.outgoing_direction(f, v).primitive == u) return true;
  return false;
}

Classification classify(const PPTCurve& c) {
  Classification out;
  auto inc = c.graph.incidence();
  bool simple = true, pseudo = true;
  for (int v : c.finite_vertices()) {
    const auto& ev = inc[static_cast<std::size_t>(v)];
    if (ev.size() == 3) continue;
    simple = false;
    VertexTags tags;
    tags.vertex = v;
    std::vector<LatticePoint> u;
    for (int e : ev) u.push_back(c.outgoing_direction(e, v).primitive);
    for (std::size_t i = 0; i < ev.size(); ++i) {
      bool unique = std::count(u.begin(), u.end(), u[i]) == 1;
      tags.edges.push_back(ev[i]);
      tags.tags.push_back(unique ? EdgeTag::Simple : EdgeTag::Multiple);
    }
    bool some_choice = false;
    for (std::size_t i = 0; i < ev.size() && !some_choice; ++i) {
      if (std::count(u.begin(), u.end(), u[i]) != 1) continue;
      std::set<LatticePoint> rest;
      for (std::size_t j = 0; j < ev.size(); ++j)
        if (j != i) rest.insert(u[j]);
      some_choice = rest.size() <= 2;
    }
    pseudo = pseudo && some_choice;
    out.high_valency.push_back(std::move(tags));
  }
  out.kind = simple ? CurveClass::Simple : (pseudo ? CurveClass::PseudoSimple : CurveClass::Neither);
  return out;
}

GraphPoint normalize(const PPTCurve& c, GraphPoint p) {
  if (p.is_vertex()) {
    if (p.vertex >= c.graph.vertex_count()) throw StructuralError("mark vertex out of range");
    return GraphPoint::at_vertex(p.vertex);
  }
  if (p.edge < 0 || p.edge >= c.graph.edge_count()) throw StructuralError("mark edge out of range");
  const auto& ed = c.graph.edges[static_cast<std::size_t>(p.edge)];
  if (p.offset < 0) throw StructuralError("negative offset on edge " + std::to_string(p.edge));
  if (p.offset == 0) return GraphPoint::at_vertex(ed.tail);
  if (!ed.length.is_infinite()) {
    if (p.offset > ed.length.value()) throw StructuralError("offset beyond edge " + std::to_string(p.edge));
    if (p.offset == ed.length.value()) return GraphPoint::at_vertex(ed.head);
  }
  return p;
}

RationalPoint image(const PPTCurve& c, const GraphPoint& p) {
  if (p.is_vertex()) return c.position(p.vertex);
  return c.point_at(p.edge, p.offset);
}

bool MarkedCurve::mark_at_infinity(std::size_t i) const {
  const auto& p = marks.at(i).point;
  return p.is_vertex() && !curve.graph.is_finite(p.vertex);
}

ValidationReport validate_marks(const MarkedCurve& m) {
  ValidationReport report;
  std::vector<GraphPoint> seen;
  for (std::size_t i = 0; i < m.marks.size(); ++i) {
    GraphPoint p = normalize(m.curve, m.marks[i].point);
    if (!(p == m.marks[i].point))
      report.add("marks", "mark " + std::to_string(i), "address is not normalized to its vertex");
    if (std::find(seen.begin(), seen.end(), p) != seen.end())
      report.add("marks", "mark " + std::to_string(i), "coincides with an earlier mark");
    seen.push_back(p);
  }
  return report;
}

Rational boundary_parameter(LatticePoint u, const RationalPoint& through) { return cross(u, through); }

BoundaryLocation compactify_end(const PPTCurve& c, int end, const LatticePolygon& delta) {
  if (!c.is_end(end)) throw Error("edge " + std::to_string(end) + " is not an end");
  LatticePoint u = c.directions.at(static_cast<std::size_t>(end)).primitive;
  BoundaryLocation loc;
  int side = delta.side_with_normal(u);
  if (side >= 0) {
    loc.kind = BoundaryLocation::Kind::Side;
    loc.index = side;
    loc.parameter = boundary_parameter(u, c.position(c.graph.edges[static_cast<std::size_t>(end)].tail));
    return loc;
  }
  loc.kind = BoundaryLocation::Kind::Corner;
  const auto& vs = delta.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (loc.index < 0 || dot(u, vs[i]) > dot(u, vs[static_cast<std::size_t>(loc.index)])) loc.index = static_cast<int>(i);
  return loc;
}

}  // namespace tropicount
