#include "io.hpp"

#include "tropicount/error.hpp"

#include <fstream>
#include <sstream>

namespace tropicount::cli {

namespace {

const char* mt_name(Mt mt) {
  switch (mt) {
    case Mt::One: return "1";
    case Mt::First: return "(1,0)";
    case Mt::Second: return "(0,1)";
    case Mt::Both: return "(1,1)";
  }
  return "1";
}

Mt parse_mt(const std::string& s) {
  if (s == "1") return Mt::One;
  if (s == "(1,0)") return Mt::First;
  if (s == "(0,1)") return Mt::Second;
  if (s == "(1,1)") return Mt::Both;
  throw ParseError("unknown mt tag '" + s + "'");
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::int64_t integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

Rational rational(const Json& j, const char* what) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) throw ParseError(std::string(what) + " must be a rational string");
  return parse_rational(j.get<std::string>());
}

LatticePoint lattice(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("lattice point must be [x, y]");
  return {integer(j[0], "coordinate"), integer(j[1], "coordinate")};
}

RationalPoint rational_point(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("point must be [x, y]");
  return {rational(j[0], "coordinate"), rational(j[1], "coordinate")};
}

void check_schema(const Json& j, const char* schema) {
  const Json& s = field(j, "schema");
  if (!s.is_string() || s.get<std::string>() != schema)
    throw ParseError(std::string("expected schema ") + schema);
}

std::vector<int> index_list(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an index list");
  std::vector<int> out;
  for (const auto& x : j) out.push_back(static_cast<int>(integer(x, "index")));
  return out;
}

Json factors_json(const std::vector<Factor>& fs) {
  Json out = Json::array();
  for (const auto& f : fs) out.push_back({{"rule", f.rule}, {"location", f.location}, {"value", rational_json(f.value)}});
  return out;
}

Json marks_json(const MarkedCurve& m, const std::vector<Reality>* tags) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.marks.size(); ++i) {
    const Mark& k = m.marks[i];
    Json j;
    j["index"] = i;
    if (k.point.is_vertex()) {
      j["vertex"] = k.point.vertex;
    } else {
      j["edge"] = k.point.edge;
      j["offset"] = rational_json(k.point.offset);
    }
    j["class"] = k.cls == MarkClass::Simple ? "simple" : "double";
    j["mt"] = mt_name(k.mt);
    if (tags) j["reality"] = (*tags)[i] == Reality::Real ? "re" : "im";
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace

std::string to_string(const Rational& r) { return r.str(); }

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && t[0] == '-') ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!valid_int(s)) throw ParseError("malformed rational '" + s + "'");
    return Rational(Integer(s));
  }
  std::string p = s.substr(0, slash), q = s.substr(slash + 1);
  if (!valid_int(p) || !valid_int(q) || q[0] == '-') throw ParseError("malformed rational '" + s + "'");
  Integer den(q);
  if (den == 0) throw ParseError("zero denominator in '" + s + "'");
  return Rational(Integer(p), den);
}

Json rational_json(const Rational& r) { return to_string(r); }
Json point_json(const RationalPoint& p) { return Json::array({to_string(p.x), to_string(p.y)}); }
Json lattice_json(LatticePoint p) { return Json::array({p.x, p.y}); }

Json polygon_json(const LatticePolygon& p) {
  Json out = Json::array();
  for (auto v : p.vertices()) out.push_back(lattice_json(v));
  return out;
}

Json curve_json(const MarkedCurve& m) {
  const PPTCurve& c = m.curve;
  Json j;
  j["schema"] = kCurveSchema;
  Json vs = Json::array();
  for (int v = 0; v < c.graph.vertex_count(); ++v) {
    Json x;
    x["id"] = v;
    if (c.graph.is_finite(v)) {
      const auto& p = c.positions[static_cast<std::size_t>(v)];
      x["position"] = p ? point_json(*p) : Json();
    } else {
      x["at_infinity"] = true;
    }
    vs.push_back(std::move(x));
  }
  j["vertices"] = std::move(vs);
  Json es = Json::array();
  for (int e = 0; e < c.graph.edge_count(); ++e) {
    const auto& ed = c.graph.edges[static_cast<std::size_t>(e)];
    const auto& d = c.directions[static_cast<std::size_t>(e)];
    es.push_back({{"id", e},
                  {"tail", ed.tail},
                  {"head", ed.head},
                  {"weight", d.weight},
                  {"direction", lattice_json(d.primitive)},
                  {"length", ed.length.is_infinite() ? Json("inf") : rational_json(ed.length.value())}});
  }
  j["edges"] = std::move(es);
  j["marks"] = marks_json(m, nullptr);
  return j;
}

Json curve_json(const RealMarkedCurve& r) {
  Json j = curve_json(r.base);
  j["marks"] = marks_json(r.base, &r.tags);
  j["involution"] = {{"vertices", r.vertex_map}, {"edges", r.edge_map}, {"marks", r.mark_map}};
  return j;
}

CurveDocument parse_curve(const Json& j) {
  check_schema(j, kCurveSchema);
  CurveDocument doc;
  PPTCurve& c = doc.curve.curve;
  const Json& vs = field(j, "vertices");
  if (!vs.is_array()) throw ParseError("vertices must be a list");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const Json& v = vs[i];
    if (integer(field(v, "id"), "vertex id") != static_cast<std::int64_t>(i)) throw ParseError("vertex ids must be 0, 1, ...");
    if (v.value("at_infinity", false)) {
      c.graph.vertices.push_back(VertexKind::AtInfinity);
      c.positions.emplace_back(std::nullopt);
    } else {
      c.graph.vertices.push_back(VertexKind::Finite);
      const Json& p = field(v, "position");
      c.positions.emplace_back(p.is_null() ? std::nullopt : std::optional<RationalPoint>(rational_point(p)));
    }
  }
  const Json& es = field(j, "edges");
  if (!es.is_array()) throw ParseError("edges must be a list");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const Json& e = es[i];
    if (integer(field(e, "id"), "edge id") != static_cast<std::int64_t>(i)) throw ParseError("edge ids must be 0, 1, ...");
    GraphEdge ge;
    ge.tail = static_cast<int>(integer(field(e, "tail"), "tail"));
    ge.head = static_cast<int>(integer(field(e, "head"), "head"));
    const Json& len = field(e, "length");
    if (len.is_string() && len.get<std::string>() == "inf")
      ge.length = Length::infinite();
    else
      ge.length = Length(rational(len, "length"));
    c.graph.edges.push_back(ge);
    c.directions.push_back(WeightedDirection{lattice(field(e, "direction")), integer(field(e, "weight"), "weight")});
  }
  const Json& ms = j.contains("marks") ? j.at("marks") : Json::array();
  if (!ms.is_array()) throw ParseError("marks must be a list");
  std::vector<Reality> tags;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const Json& k = ms[i];
    if (k.contains("index") && integer(k.at("index"), "mark index") != static_cast<std::int64_t>(i))
      throw ParseError("mark indices must be 0, 1, ...");
    Mark mark;
    if (k.contains("vertex"))
      mark.point = GraphPoint::at_vertex(static_cast<int>(integer(k.at("vertex"), "vertex")));
    else
      mark.point = GraphPoint::on_edge(static_cast<int>(integer(field(k, "edge"), "edge")), rational(field(k, "offset"), "offset"));
    const std::string cls = k.value("class", "simple");
    if (cls != "simple" && cls != "double") throw ParseError("unknown mark class '" + cls + "'");
    mark.cls = cls == "simple" ? MarkClass::Simple : MarkClass::Double;
    mark.mt = parse_mt(k.value("mt", "1"));
    const std::string re = k.value("reality", "re");
    if (re != "re" && re != "im") throw ParseError("unknown reality tag '" + re + "'");
    tags.push_back(re == "re" ? Reality::Real : Reality::Imaginary);
    doc.curve.marks.push_back(mark);
  }
  if (j.contains("involution")) {
    const Json& inv = j.at("involution");
    RealMarkedCurve r;
    r.base = doc.curve;
    r.vertex_map = index_list(field(inv, "vertices"));
    r.edge_map = index_list(field(inv, "edges"));
    r.mark_map = index_list(field(inv, "marks"));
    r.tags = tags;
    doc.real = std::move(r);
  }
  return doc;
}

Json config_json(const ConfigDocument& d) {
  Json j;
  j["schema"] = kConfigSchema;
  j["polygon"] = polygon_json(d.config.polygon);
  Json ps = Json::array();
  for (const auto& p : d.config.points) {
    if (p.on_boundary())
      ps.push_back({{"side", *p.side}, {"parameter", rational_json(p.parameter)}});
    else
      ps.push_back({{"point", point_json(p.point)}});
  }
  j["points"] = std::move(ps);
  if (!d.weights.empty()) j["weights"] = d.weights;
  if (d.seed) j["seed"] = *d.seed;
  return j;
}

ConfigDocument parse_config(const Json& j) {
  check_schema(j, kConfigSchema);
  ConfigDocument d;
  std::vector<LatticePoint> corners;
  const Json& poly = field(j, "polygon");
  if (!poly.is_array()) throw ParseError("polygon must be a list of points");
  for (const auto& p : poly) corners.push_back(lattice(p));
  d.config.polygon = LatticePolygon::hull(corners);
  const Json& ps = field(j, "points");
  if (!ps.is_array()) throw ParseError("points must be a list");
  for (const auto& p : ps) {
    if (p.contains("side"))
      d.config.points.push_back(ConfigPoint::boundary(static_cast<int>(integer(p.at("side"), "side")),
                                                      rational(field(p, "parameter"), "parameter")));
    else
      d.config.points.push_back(ConfigPoint::interior(rational_point(field(p, "point"))));
  }
  if (j.contains("weights"))
    for (const auto& w : j.at("weights")) d.weights.push_back(static_cast<int>(integer(w, "weight")));
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw ParseError("seed must be a nonnegative integer");
    d.seed = j.at("seed").get<std::uint64_t>();
  }
  return d;
}

ValuatedPolynomial parse_polynomial(const Json& j) {
  check_schema(j, kTropSchema);
  ValuatedPolynomial p;
  const Json& ms = field(j, "monomials");
  if (!ms.is_array()) throw ParseError("monomials must be a list");
  for (const auto& m : ms) {
    LatticePoint w = lattice(field(m, "exponent"));
    if (p.valuation.count(w)) throw ParseError("repeated exponent");
    p.valuation[w] = rational(field(m, "valuation"), "valuation");
    ComplexRational init{Rational(1), Rational(0)};
    if (m.contains("initial")) {
      RationalPoint z = rational_point(m.at("initial"));
      init = {z.x, z.y};
    }
    p.initial[w] = init;
  }
  return p;
}

Json polynomial_json(const ValuatedPolynomial& p) {
  Json j;
  j["schema"] = kTropSchema;
  Json ms = Json::array();
  for (const auto& [w, v] : p.valuation) {
    Json m = {{"exponent", lattice_json(w)}, {"valuation", rational_json(v)}};
    auto it = p.initial.find(w);
    if (it != p.initial.end()) m["initial"] = Json::array({to_string(it->second.re), to_string(it->second.im)});
    ms.push_back(std::move(m));
  }
  j["monomials"] = std::move(ms);
  return j;
}

Json report_json(const ValidationReport& r) {
  Json issues = Json::array();
  for (const auto& i : r.issues) issues.push_back({{"rule", i.rule}, {"location", i.location}, {"message", i.message}});
  return {{"ok", r.ok()}, {"issues", std::move(issues)}};
}

Json ept_json(const EPTCurve& t) {
  Json j;
  Json vs = Json::array();
  for (const auto& v : t.vertices) vs.push_back(point_json(v));
  j["vertices"] = std::move(vs);
  Json es = Json::array();
  for (const auto& e : t.edges) {
    Json x;
    switch (e.kind) {
      case EPTEdge::Kind::Segment:
        x = {{"kind", "segment"}, {"from", e.from}, {"to", e.to}};
        break;
      case EPTEdge::Kind::Ray:
        x = {{"kind", "ray"}, {"from", e.from}};
        break;
      case EPTEdge::Kind::Line:
        x = {{"kind", "line"}, {"anchor", point_json(e.anchor)}};
        break;
    }
    x["direction"] = lattice_json(e.direction);
    x["weight"] = e.weight;
    es.push_back(std::move(x));
  }
  j["edges"] = std::move(es);
  return j;
}

Json subdivision_json(const DualSubdivision& s) {
  Json j;
  j["polygon"] = polygon_json(s.polygon);
  Json cells = Json::array();
  for (const auto& c : s.cells) cells.push_back(polygon_json(c));
  j["cells"] = std::move(cells);
  Json nu = Json::array();
  for (const auto& [p, v] : s.nu.values) nu.push_back({{"point", lattice_json(p)}, {"value", rational_json(v)}});
  j["nu"] = std::move(nu);
  return j;
}

Json breakdown_json(const WeightBreakdown& w) {
  return {{"vertices", factors_json(w.vertices)},
          {"edges", factors_json(w.edges)},
          {"marks", factors_json(w.marks)},
          {"total", rational_json(w.total)}};
}

Json breakdown_json(const RealWeightBreakdown& w) {
  return {{"l1", w.l1.str()}, {"l2", w.l2.str()}, {"factors", factors_json(w.factors)}, {"total", rational_json(w.total)}};
}

Json enumeration_json(const EnumerationProblem& p, const EnumerationResult& r) {
  Json j;
  j["schema"] = "tropicount.enumeration/1";
  j["polygon"] = polygon_json(p.polygon);
  j["genus"] = p.genus;
  j["seed"] = p.seed;
  j["seed_used"] = r.diagnostics.seed_used;
  j["config"] = config_json({r.config, {}, r.diagnostics.seed_used});
  j["total_complex"] = rational_json(r.total_complex);
  if (r.total_real) j["total_real"] = rational_json(*r.total_real);
  Json curves = Json::array();
  for (const auto& c : r.curves) {
    Json x;
    x["type"] = c.type_index;
    x["curve"] = curve_json(c.curve);
    x["weight"] = breakdown_json(c.weight);
    if (c.real) x["real_weight"] = breakdown_json(*c.real);
    x["path_multiplicity"] = c.path_multiplicity.str();
    x["subdivision"] = subdivision_json(dual_subdivision(push_forward(c.curve.curve)));
    curves.push_back(std::move(x));
  }
  j["curves"] = std::move(curves);
  const auto& d = r.diagnostics;
  j["diagnostics"] = {{"reseeds", d.reseeds},
                      {"types", d.types},
                      {"solved", d.solved},
                      {"no_solution", d.no_solution},
                      {"duplicates", d.duplicates},
                      {"histories", d.generation.histories},
                      {"lines", d.generation.lines},
                      {"shared_strips", d.generation.shared_strips},
                      {"wrong_genus", d.generation.wrong_genus}};
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace tropicount::cli
