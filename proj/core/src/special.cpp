#include "tropicount/error.hpp"
#include "tropicount/patchdata.hpp"
#include "tropicount/weights.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace tropicount {

namespace {

// Marks of G_0 grouped by the edge interior or vertex they sit on.
struct MarkIndex {
  std::vector<std::vector<std::pair<Rational, int>>> on_edge;  // (offset from tail, mark)
  std::vector<int> at_vertex;

  explicit MarkIndex(const MarkedCurve& m)
      : on_edge(m.curve.graph.edges.size()), at_vertex(m.curve.graph.vertices.size(), -1) {
    for (std::size_t i = 0; i < m.marks.size(); ++i) {
      GraphPoint p = normalize(m.curve, m.marks[i].point);
      if (p.is_vertex())
        at_vertex[static_cast<std::size_t>(p.vertex)] = static_cast<int>(i);
      else
        on_edge[static_cast<std::size_t>(p.edge)].push_back({p.offset, static_cast<int>(i)});
    }
  }
};

// Distance from endpoint x along e; ends are measured from their finite vertex.
Rational distance_from(const PPTCurve& c, int e, int x, const Rational& offset) {
  const auto& ed = c.graph.edges[static_cast<std::size_t>(e)];
  return x == ed.tail ? offset : ed.length.value() - offset;
}

std::optional<Rational> edge_length(const PPTCurve& c, int e) {
  const auto& l = c.graph.edges[static_cast<std::size_t>(e)].length;
  if (l.is_infinite()) return std::nullopt;
  return l.value();
}

// Grows the largest pair of regions leaving x along a and y along b on which h agrees.
class RegionMatcher {
 public:
  RegionMatcher(const MarkedCurve& m, const MarkIndex& idx, int v)
      : m_(m), c_(m.curve), idx_(idx), inc_(c_.graph.incidence()) {
    seen_.insert(v);
  }

  void match(int a, int x, int b, int y) {
    if (c_.outgoing_direction(a, x) != c_.outgoing_direction(b, y)) return;
    auto la = edge_length(c_, a), lb = edge_length(c_, b);
    std::optional<Rational> common = la && lb ? std::optional<Rational>(std::min(*la, *lb)) : (la ? la : lb);
    auto inside = [&](int e, int from) {
      std::vector<std::pair<Rational, int>> out;
      for (const auto& [off, mk] : idx_.on_edge[static_cast<std::size_t>(e)]) {
        Rational d = distance_from(c_, e, from, off);
        if (!common || d < *common) out.push_back({d, mk});
      }
      return out;
    };
    auto ma = inside(a, x), mb = inside(b, y);
    for (const auto& [d, mk] : ma) region.push_back(mk);
    for (const auto& [d, mk] : mb) region.push_back(mk);
    for (const auto& [da, ia] : ma)
      for (const auto& [db, ib] : mb)
        if (da == db && m_.marks[static_cast<std::size_t>(ia)].mt == m_.marks[static_cast<std::size_t>(ib)].mt) pairs.push_back({ia, ib});
    if (!la || !lb || *la != *lb) return;

    int xa = c_.other_end(a, x), yb = c_.other_end(b, y);
    if (xa == yb || seen_.count(xa) || seen_.count(yb)) return;
    seen_.insert(xa);
    seen_.insert(yb);
    int ka = idx_.at_vertex[static_cast<std::size_t>(xa)], kb = idx_.at_vertex[static_cast<std::size_t>(yb)];
    if (ka >= 0) region.push_back(ka);
    if (kb >= 0) region.push_back(kb);
    if (ka >= 0 && kb >= 0 && m_.marks[static_cast<std::size_t>(ka)].mt == m_.marks[static_cast<std::size_t>(kb)].mt) pairs.push_back({ka, kb});
    if (!c_.graph.is_finite(xa) || !c_.graph.is_finite(yb)) return;
    std::vector<int> rest_b;
    for (int f : inc_[static_cast<std::size_t>(yb)])
      if (f != b) rest_b.push_back(f);
    for (int f : inc_[static_cast<std::size_t>(xa)]) {
      if (f == a) continue;
      auto it = std::find_if(rest_b.begin(), rest_b.end(),
                             [&](int g) { return c_.outgoing_direction(g, yb) == c_.outgoing_direction(f, xa); });
      if (it == rest_b.end()) continue;
      int g = *it;
      rest_b.erase(it);
      match(f, xa, g, yb);
    }
  }

  std::vector<std::pair<int, int>> pairs;
  std::vector<int> region;

 private:
  const MarkedCurve& m_;
  const PPTCurve& c_;
  const MarkIndex& idx_;
  std::vector<std::vector<int>> inc_;
  std::set<int> seen_;
};

bool g0(const MarkedCurve& m, std::size_t i) { return !m.mark_at_infinity(i); }

}  // namespace

SpecialData detect_special(const MarkedCurve& m) {
  const PPTCurve& c = m.curve;
  SpecialData out;
  std::vector<RationalPoint> img;
  for (const auto& mk : m.marks) img.push_back(image(c, mk.point));
  for (std::size_t i = 0; i < m.marks.size(); ++i)
    for (std::size_t j = i + 1; j < m.marks.size(); ++j)
      if (g0(m, i) && g0(m, j) && img[i] == img[j] && m.marks[i].mt == m.marks[j].mt)
        out.point_pairs.push_back({static_cast<int>(i), static_cast<int>(j)});

  MarkIndex idx(m);
  auto inc = c.graph.incidence();
  for (int v : c.finite_vertices()) {
    const auto& around = inc[static_cast<std::size_t>(v)];
    if (around.size() <= 3) continue;
    for (std::size_t i = 0; i < around.size(); ++i)
      for (std::size_t j = i + 1; j < around.size(); ++j) {
        int e = around[i], f = around[j];
        if (c.outgoing_direction(e, v).primitive != c.outgoing_direction(f, v).primitive) continue;
        RegionMatcher rm(m, idx, v);
        rm.match(e, v, f, v);
        if (rm.pairs.empty()) continue;
        out.edge_pairs.push_back({v, e, f, rm.pairs, rm.region});
      }
  }
  for (const auto& p : out.edge_pairs)
    if (std::find(out.vertices.begin(), out.vertices.end(), p.vertex) == out.vertices.end()) out.vertices.push_back(p.vertex);
  std::sort(out.vertices.begin(), out.vertices.end());
  return out;
}

ValidationReport check_T(const MarkedCurve& m, const TOptions& options) {
  const PPTCurve& c = m.curve;
  ValidationReport rep;
  auto inc = c.graph.incidence();
  for (int e : c.bounded_edges()) {
    const auto& ed = c.graph.edges[static_cast<std::size_t>(e)];
    if (is_multiple_at(c, e, ed.tail) && is_multiple_at(c, e, ed.head)) rep.add("T1", "edge " + std::to_string(e), "multiple at both endpoints");
  }
  MarkIndex idx(m);
  for (int v : c.finite_vertices()) {
    int mk = idx.at_vertex[static_cast<std::size_t>(v)];
    if (mk >= 0 && inc[static_cast<std::size_t>(v)].size() > 3)
      rep.add("T2", "mark " + std::to_string(mk), "mark at a vertex of valency above 3");
  }
  if (options.genericity) {
    std::map<RationalPoint, int> counts;
    for (std::size_t i = 0; i < m.marks.size(); ++i)
      if (g0(m, i)) ++counts[image(c, m.marks[i].point)];
    WeightedConfiguration w;
    w.base.polygon = newton_polygon(c);
    for (const auto& [x, n] : counts) {
      w.base.points.push_back(ConfigPoint::interior(x));
      w.weights.push_back(n);
    }
    auto res = check_delta_generic(w, w.base.polygon, options.budget);
    if (res.verdict == GenericityVerdict::Witness)
      rep.add("T3", "configuration", "an end-marked curve matches a subconfiguration");
    else if (res.verdict == GenericityVerdict::Inconclusive)
      rep.add("T3", "configuration", "genericity undecided within the search budget");
  }

  SpecialData sp = detect_special(m);
  for (const auto& p : sp.edge_pairs) {
    const std::string where = "edges " + std::to_string(p.first) + "," + std::to_string(p.second);
    if (c.weight(p.first) != 1 || c.weight(p.second) != 1) rep.add("T4", where, "special edge of weight above 1");
    std::set<int> region(p.region_marks.begin(), p.region_marks.end());
    std::size_t inside = 0;
    for (auto [i, j] : sp.point_pairs)
      if (region.count(i) && region.count(j)) ++inside;
    if (inside > 1) rep.add("T5", where, "regions carry " + std::to_string(inside) + " special pairs of points");
    if (c.is_end(p.first) && c.is_end(p.second)) rep.add("T6", where, "special pair of ends");
    if (!c.is_end(p.first) && !c.is_end(p.second)) {
      int a = idx.at_vertex[static_cast<std::size_t>(c.other_end(p.first, p.vertex))];
      int b = idx.at_vertex[static_cast<std::size_t>(c.other_end(p.second, p.vertex))];
      if (a >= 0 && b >= 0 && m.marks[static_cast<std::size_t>(a)].mt == Mt::Both &&
          m.marks[static_cast<std::size_t>(b)].mt == Mt::Both && image(c, m.marks[static_cast<std::size_t>(a)].point) == image(c, m.marks[static_cast<std::size_t>(b)].point))
        rep.add("T6", where, "edges end at a special pair of double vertex marks");
    }
  }
  for (int v : sp.vertices) {
    bool unit = false;
    for (int e : inc[static_cast<std::size_t>(v)])
      if (!is_multiple_at(c, e, v) && c.weight(e) == 1) unit = true;
    if (!unit) rep.add("T4", "vertex " + std::to_string(v), "no simple edge of weight 1");

    // Edges at v grouped by a common marked image and mt.
    struct Hit {
      int edge;
      Rational from_v;
      std::optional<Rational> length;
    };
    std::map<std::pair<RationalPoint, int>, std::vector<Hit>> groups;
    for (int e : inc[static_cast<std::size_t>(v)]) {
      std::vector<std::pair<Rational, int>> on = idx.on_edge[static_cast<std::size_t>(e)];
      auto len = edge_length(c, e);
      int far = c.other_end(e, v);
      int fm = idx.at_vertex[static_cast<std::size_t>(far)];
      for (auto& [off, mk] : on) off = distance_from(c, e, v, off);
      if (fm >= 0 && g0(m, static_cast<std::size_t>(fm)) && len) on.push_back({*len, fm});
      for (const auto& [d, mk] : on)
        groups[{image(c, m.marks[static_cast<std::size_t>(mk)].point), static_cast<int>(m.marks[static_cast<std::size_t>(mk)].mt)}].push_back({e, d, len});
    }
    for (auto& [key, hits] : groups) {
      if (hits.size() < 2) continue;
      std::stable_sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
        if (!a.length || !b.length) return a.length.has_value() && !b.length.has_value();
        return *a.length < *b.length;
      });
      const std::size_t s = hits.size();
      Rational rhs = 0;
      bool infinite = false;
      for (std::size_t i = 0; i + 1 < s; ++i) {
        if (!hits[i].length) {
          infinite = true;
          break;
        }
        Rational d = *hits[i].length - hits[i].from_v;
        rhs += (i + 2 == s) ? 2 * d : d;
      }
      if (infinite || !(hits[0].from_v > rhs))
        rep.add("T7", "vertex " + std::to_string(v), "marked edges are not spread far enough apart");
    }
  }
  return rep;
}

ValidationReport check_R(const RealMarkedCurve& r, const KConfiguration& k) {
  ValidationReport rep;
  try {
    check_involution(r);
  } catch (const Error& e) {
    rep.add("R7", "curve", std::string("no real structure: ") + e.what());
    return rep;
  }
  rep.append(real_structure_report(r));
  const PPTCurve& c = r.base.curve;
  const auto& pts = k.points;

  std::set<ConfigPoint, bool (*)(const ConfigPoint&, const ConfigPoint&)> re_val(
      [](const ConfigPoint& a, const ConfigPoint& b) {
        if (a.side != b.side) return a.side < b.side;
        if (!(a.point == b.point)) return a.point < b.point;
        return a.parameter < b.parameter;
      });
  auto im_val = re_val;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    const std::string where = "point " + std::to_string(p);
    const int q = pts[p].conjugate;
    if (q < 0 || static_cast<std::size_t>(q) >= pts.size() || pts[static_cast<std::size_t>(q)].conjugate != static_cast<int>(p)) {
      rep.add("R6", where, "conjugation is not an involution of the configuration");
      continue;
    }
    const auto& other = pts[static_cast<std::size_t>(q)];
    if (!(other.valuation == pts[p].valuation)) rep.add("R6", where, "conjugate has a different valuation");
    for (std::size_t i = 0; i < 2; ++i)
      if (other.initial[i].re != pts[p].initial[i].re || other.initial[i].im != -pts[p].initial[i].im)
        rep.add("R6", where, "initial coefficients are not conjugate");
    (q == static_cast<int>(p) ? re_val : im_val).insert(pts[p].valuation);
  }
  for (const auto& v : re_val)
    if (im_val.count(v)) rep.add("R6", "configuration", "real and imaginary points share a valuation");

  for (auto [p, mk] : k.psi) {
    if (p < 0 || static_cast<std::size_t>(p) >= pts.size() || mk < 0 || static_cast<std::size_t>(mk) >= r.tags.size()) continue;
    const bool real_point = pts[static_cast<std::size_t>(p)].conjugate == p;
    if (real_point != (r.tags[static_cast<std::size_t>(mk)] == Reality::Real))
      rep.add("R7(i)", "point " + std::to_string(p), "boundary point and its mark differ in reality");
  }
  for (std::size_t i = 0; i < r.base.marks.size(); ++i) {
    if (!g0(r.base, i)) continue;
    const std::string where = "mark " + std::to_string(i);
    GraphPoint gp = normalize(c, r.base.marks[i].point);
    ConfigPoint x = ConfigPoint::interior(image(c, gp));
    const bool real_tag = r.tags[i] == Reality::Real;
    if (real_tag && !re_val.count(x)) rep.add("R7(ii)", where, "real mark over no real point");
    if (!real_tag && gp.is_vertex() && !im_val.count(x)) rep.add("R7(ii)", where, "imaginary vertex mark over no imaginary point");
    const bool in_im = gp.is_vertex() ? !r.fixed_vertex(gp.vertex) : !r.fixed_edge(gp.edge);
    if (real_tag && r.base.marks[i].cls == MarkClass::Double && in_im)
      rep.add("R7(iii)", where, "real double mark in the non-real part");
    if (!real_tag && in_im && r.base.marks[i].mt == Mt::First &&
        r.base.marks[static_cast<std::size_t>(r.mark_map[i])].mt != Mt::Second)
      rep.add("R7(iv)", where, "conjugate of an mt=(1,0) mark is not mt=(0,1)");
  }
  for (int e : c.ends())
    if (r.fixed_edge(e) && c.weight(e) % 2 == 0) rep.add("R7(v)", "edge " + std::to_string(e), "real end of even weight");
  return rep;
}

}  // namespace tropicount
