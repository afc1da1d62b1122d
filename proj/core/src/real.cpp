#include "tropicount/curve.hpp"

#include "tropicount/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace tropicount {

namespace {

std::vector<int> identity(std::size_t n) {
  std::vector<int> out(n);
  std::iota(out.begin(), out.end(), 0);
  return out;
}

void require_involutive(const std::vector<int>& map, std::size_t n, const char* what) {
  if (map.size() != n) throw Error(std::string("involution: ") + what + " map has the wrong size");
  for (std::size_t i = 0; i < n; ++i) {
    int j = map[i];
    if (j < 0 || static_cast<std::size_t>(j) >= n || map[static_cast<std::size_t>(j)] != static_cast<int>(i))
      throw Error(std::string("involution: ") + what + " map is not an involution at " + std::to_string(i));
  }
}

GraphPoint map_point(const RealMarkedCurve& r, const GraphPoint& p) {
  if (p.is_vertex()) return GraphPoint::at_vertex(r.vertex_map[static_cast<std::size_t>(p.vertex)]);
  return GraphPoint::on_edge(r.edge_map[static_cast<std::size_t>(p.edge)], p.offset);
}

}  // namespace

RealMarkedCurve with_identity_involution(const MarkedCurve& m) {
  RealMarkedCurve r;
  r.base = m;
  r.vertex_map = identity(m.curve.graph.vertices.size());
  r.edge_map = identity(m.curve.graph.edges.size());
  r.mark_map = identity(m.marks.size());
  r.tags.assign(m.marks.size(), Reality::Real);
  return r;
}

void check_involution(const RealMarkedCurve& r) {
  const PPTCurve& c = r.base.curve;
  require_involutive(r.vertex_map, c.graph.vertices.size(), "vertex");
  require_involutive(r.edge_map, c.graph.edges.size(), "edge");
  require_involutive(r.mark_map, r.base.marks.size(), "mark");
  if (r.tags.size() != r.base.marks.size()) throw Error("involution: one Re/Im tag per mark is required");
  for (int v = 0; v < c.graph.vertex_count(); ++v) {
    int w = r.vertex_map[static_cast<std::size_t>(v)];
    if (c.graph.vertices[static_cast<std::size_t>(v)] != c.graph.vertices[static_cast<std::size_t>(w)])
      throw Error("involution: vertex " + std::to_string(v) + " swapped with a vertex of another kind");
    if (c.graph.is_finite(v) && !(c.position(v) == c.position(w)))
      throw Error("involution: vertex " + std::to_string(v) + " does not commute with h");
  }
  for (int e = 0; e < c.graph.edge_count(); ++e) {
    int f = r.edge_map[static_cast<std::size_t>(e)];
    const auto& a = c.graph.edges[static_cast<std::size_t>(e)];
    const auto& b = c.graph.edges[static_cast<std::size_t>(f)];
    if (r.vertex_map[static_cast<std::size_t>(a.tail)] != b.tail || r.vertex_map[static_cast<std::size_t>(a.head)] != b.head)
      throw Error("involution: edge " + std::to_string(e) + " endpoints are not mapped consistently");
    if (!(c.directions[static_cast<std::size_t>(e)] == c.directions[static_cast<std::size_t>(f)]) || !(a.length == b.length))
      throw Error("involution: edge " + std::to_string(e) + " does not commute with h");
  }
  for (std::size_t i = 0; i < r.base.marks.size(); ++i) {
    auto j = static_cast<std::size_t>(r.mark_map[i]);
    GraphPoint image = normalize(c, map_point(r, normalize(c, r.base.marks[i].point)));
    if (!(image == normalize(c, r.base.marks[j].point)))
      throw Error("involution: mark " + std::to_string(i) + " is not sent to its partner");
    if (r.tags[i] != r.tags[j]) throw Error("involution: Re/Im split is not invariant");
  }
}

MarkedCurve quotient_by_involution(const RealMarkedCurve& r) {
  check_involution(r);
  const PPTCurve& c = r.base.curve;
  std::vector<int> vnew(c.graph.vertices.size(), -1), enew(c.graph.edges.size(), -1);
  MarkedCurve q;
  for (int v = 0; v < c.graph.vertex_count(); ++v) {
    if (r.vertex_map[static_cast<std::size_t>(v)] < v) continue;
    vnew[static_cast<std::size_t>(v)] = q.curve.graph.vertex_count();
    q.curve.graph.vertices.push_back(c.graph.vertices[static_cast<std::size_t>(v)]);
    q.curve.positions.push_back(c.positions[static_cast<std::size_t>(v)]);
  }
  auto rep_vertex = [&](int v) {
    return vnew[static_cast<std::size_t>(std::min(v, r.vertex_map[static_cast<std::size_t>(v)]))];
  };
  for (int e = 0; e < c.graph.edge_count(); ++e) {
    int f = r.edge_map[static_cast<std::size_t>(e)];
    if (f < e) continue;
    enew[static_cast<std::size_t>(e)] = q.curve.graph.edge_count();
    GraphEdge ed = c.graph.edges[static_cast<std::size_t>(e)];
    WeightedDirection d = c.directions[static_cast<std::size_t>(e)];
    if (f != e) {
      d.weight *= 2;
      if (!ed.length.is_infinite()) ed.length = Length(ed.length.value() / 2);
    }
    ed.tail = rep_vertex(ed.tail);
    ed.head = rep_vertex(ed.head);
    q.curve.graph.edges.push_back(ed);
    q.curve.directions.push_back(d);
  }
  for (std::size_t i = 0; i < r.base.marks.size(); ++i) {
    if (static_cast<std::size_t>(r.mark_map[i]) < i) continue;
    Mark mk = r.base.marks[i];
    GraphPoint p = normalize(c, mk.point);
    if (p.is_vertex()) {
      mk.point = GraphPoint::at_vertex(rep_vertex(p.vertex));
    } else {
      int f = r.edge_map[static_cast<std::size_t>(p.edge)];
      int rep = std::min(p.edge, f);
      mk.point = GraphPoint::on_edge(enew[static_cast<std::size_t>(rep)], f != p.edge ? Rational(p.offset / 2) : p.offset);
    }
    q.marks.push_back(mk);
  }
  return q;
}

RealMarkedCurve double_curve(const MarkedCurve& m, const std::vector<int>& doubled, Reality copied) {
  const PPTCurve& c = m.curve;
  std::set<int> in_k(doubled.begin(), doubled.end());
  for (int e : in_k) {
    if (e < 0 || e >= c.graph.edge_count()) throw Error("double: edge index out of range");
    if (c.weight(e) % 2 != 0) throw Error("double: edge " + std::to_string(e) + " has odd weight");
  }
  auto inc = c.graph.incidence();
  // Vertices whose edges all lie in K are copied; the others glue K to its copy.
  std::vector<bool> interior(c.graph.vertices.size(), false);
  for (int v = 0; v < c.graph.vertex_count(); ++v) {
    const auto& ev = inc[static_cast<std::size_t>(v)];
    interior[static_cast<std::size_t>(v)] =
        std::all_of(ev.begin(), ev.end(), [&](int e) { return in_k.count(e) > 0; });
  }

  RealMarkedCurve r = with_identity_involution(m);
  PPTCurve& out = r.base.curve;
  std::vector<int> vcopy(c.graph.vertices.size(), -1);
  for (int v = 0; v < c.graph.vertex_count(); ++v) {
    if (!interior[static_cast<std::size_t>(v)]) continue;
    int nv = out.graph.vertex_count();
    out.graph.vertices.push_back(c.graph.vertices[static_cast<std::size_t>(v)]);
    out.positions.push_back(c.positions[static_cast<std::size_t>(v)]);
    vcopy[static_cast<std::size_t>(v)] = nv;
    r.vertex_map[static_cast<std::size_t>(v)] = nv;
    r.vertex_map.push_back(v);
  }
  auto copy_of = [&](int v) { return interior[static_cast<std::size_t>(v)] ? vcopy[static_cast<std::size_t>(v)] : v; };
  std::vector<int> ecopy(c.graph.edges.size(), -1);
  for (int e : in_k) {
    auto& ed = out.graph.edges[static_cast<std::size_t>(e)];
    auto& d = out.directions[static_cast<std::size_t>(e)];
    d.weight /= 2;
    if (!ed.length.is_infinite()) ed.length = Length(ed.length.value() * 2);
    GraphEdge copy{copy_of(ed.tail), copy_of(ed.head), ed.length};
    int ne = out.graph.edge_count();
    out.graph.edges.push_back(copy);
    out.directions.push_back(WeightedDirection(d));
    ecopy[static_cast<std::size_t>(e)] = ne;
    r.edge_map[static_cast<std::size_t>(e)] = ne;
    r.edge_map.push_back(e);
  }
  const std::size_t original_marks = m.marks.size();
  for (std::size_t i = 0; i < original_marks; ++i) {
    GraphPoint p = normalize(c, m.marks[i].point);
    Mark copy = r.base.marks[i];
    if (p.is_vertex()) {
      if (!interior[static_cast<std::size_t>(p.vertex)]) continue;
      copy.point = GraphPoint::at_vertex(vcopy[static_cast<std::size_t>(p.vertex)]);
    } else {
      if (!in_k.count(p.edge)) continue;
      r.base.marks[i].point = GraphPoint::on_edge(p.edge, p.offset * 2);
      copy.point = GraphPoint::on_edge(ecopy[static_cast<std::size_t>(p.edge)], p.offset * 2);
    }
    std::size_t ni = r.base.marks.size();
    r.base.marks.push_back(copy);
    r.mark_map[i] = static_cast<int>(ni);
    r.mark_map.push_back(static_cast<int>(i));
    r.tags[i] = copied;
    r.tags.push_back(copied);
  }
  return r;
}

}  // namespace tropicount
