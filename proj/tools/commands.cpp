#include "commands.hpp"

#include "io.hpp"
#include "svg.hpp"

#include "tropicount/error.hpp"
#include "tropicount/patchdata.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <ostream>

namespace tropicount::cli {

namespace {

struct Flags {
  std::string file;
  std::string format = "json";
  bool real = false;
  bool genericity = false;
  std::size_t budget = 2000;
  std::uint64_t seed = 0;
  int degree = 0;
  int genus = 0;
  std::vector<std::string> polygon;
  std::string render;
};

const char* class_name(CurveClass c) {
  switch (c) {
    case CurveClass::Simple: return "simple";
    case CurveClass::PseudoSimple: return "pseudo-simple";
    case CurveClass::Neither: return "neither";
  }
  return "neither";
}

// Runs `check`, turning thrown errors into an issue under `rule`.
template <class F>
ValidationReport guarded(const char* rule, F&& check) {
  try {
    return check();
  } catch (const HypothesisError& e) {
    ValidationReport r;
    r.add(e.rule(), "", e.what());
    return r;
  } catch (const Error& e) {
    ValidationReport r;
    r.add(rule, "", e.what());
    return r;
  }
}

void require_valid(const ValidationReport& r) {
  if (r.ok()) return;
  const Issue& i = r.issues.front();
  throw HypothesisError(i.rule, i.location + ": " + i.message);
}

int cmd_validate(const Flags& f, std::ostream& out) {
  const CurveDocument doc = parse_curve(read_json_file(f.file));
  const MarkedCurve& m = doc.curve;
  Json checks = Json::object();
  bool ok = true;
  auto record = [&](const char* name, const ValidationReport& r) {
    ok = ok && r.ok();
    checks[name] = report_json(r);
  };

  ValidationReport ppt = guarded("structure", [&] { return validate_ppt(m.curve); });
  record("ppt", ppt);
  Json info = Json::object();
  if (ppt.ok()) {
    record("marks", guarded("marks", [&] { return validate_marks(m); }));
    Classification cls = classify(m.curve);
    info["class"] = class_name(cls.kind);
    info["genus"] = genus(m.curve.graph);
    if (!m.marks.empty()) {
      record("regularity", guarded("regularity", [&] {
               ValidationReport r;
               if (!check_regular(m)) r.add("regularity", "", "marks do not cut the curve into trees with one unmarked end each");
               return r;
             }));
      TOptions t{f.genericity, f.budget};
      record("T", guarded("T", [&] { return check_T(m, t); }));
    }
    if (doc.real)
      record("real", guarded("involution", [&] {
               check_involution(*doc.real);
               return real_structure_report(*doc.real);
             }));
  }

  if (f.format == "text") {
    for (const auto& [name, r] : checks.items())
      for (const auto& i : r["issues"])
        out << name << ": " << i["rule"].get<std::string>() << " " << i["location"].get<std::string>() << ": "
            << i["message"].get<std::string>() << "\n";
    out << (ok ? "ok" : "failed") << "\n";
  } else {
    Json j;
    j["schema"] = "tropicount.report/1";
    j["ok"] = ok;
    j["info"] = std::move(info);
    j["checks"] = std::move(checks);
    out << dump(j);
  }
  return ok ? kPass : kDomainFailure;
}

int cmd_weight(const Flags& f, std::ostream& out) {
  const CurveDocument doc = parse_curve(read_json_file(f.file));
  require_valid(validate_ppt(doc.curve.curve));
  WeightOptions opts;
  opts.seed = f.seed;
  Json j;
  j["schema"] = "tropicount.weight/1";
  WeightBreakdown w = complex_weight(doc.curve, opts);
  j["complex"] = breakdown_json(w);
  std::optional<RealWeightBreakdown> rw;
  if (f.real) {
    rw = real_weight(doc.real ? *doc.real : with_identity_involution(doc.curve), opts);
    j["real"] = breakdown_json(*rw);
  }
  if (f.format == "text") {
    out << "complex " << to_string(w.total) << "\n";
    if (rw) out << "real " << to_string(rw->total) << "\n";
  } else {
    out << dump(j);
  }
  return kPass;
}

LatticePolygon polygon_from(const Flags& f) {
  if (!f.polygon.empty()) {
    std::vector<LatticePoint> pts;
    for (const auto& s : f.polygon) {
      auto comma = s.find(',');
      if (comma == std::string::npos) throw ParseError("polygon vertex '" + s + "' is not x,y");
      try {
        pts.push_back({std::stoll(s.substr(0, comma)), std::stoll(s.substr(comma + 1))});
      } catch (const std::exception&) {
        throw ParseError("polygon vertex '" + s + "' is not x,y");
      }
    }
    return LatticePolygon::hull(pts);
  }
  if (f.degree < 1) throw ParseError("enumerate needs --degree d >= 1 or --polygon");
  return LatticePolygon::hull({{0, 0}, {f.degree, 0}, {0, f.degree}});
}

int cmd_enumerate(const Flags& f, std::ostream& out) {
  LatticePolygon delta = polygon_from(f);
  if (delta.dimension() != 2) throw Error("the polygon must be two-dimensional");
  EnumerationProblem p = make_problem(delta, f.genus, f.seed);
  EnumerationResult r = f.real ? count_real(p) : count_complex(p);
  if (!f.render.empty()) {
    std::ofstream svg(f.render);
    if (!svg) throw ParseError("cannot write " + f.render);
    svg << render_svg(r);
  }
  if (f.format == "text") {
    out << "complex " << to_string(r.total_complex);
    if (r.total_real) out << " real " << to_string(*r.total_real);
    out << " curves " << r.curves.size() << "\n";
  } else {
    out << dump(enumeration_json(p, r));
  }
  return kPass;
}

int cmd_tropicalize(const Flags& f, std::ostream& out) {
  ValuatedPolynomial poly = parse_polynomial(read_json_file(f.file));
  Tropicalization t = tropicalize(poly);
  if (f.format == "text") {
    out << "vertices " << t.curve.vertices.size() << " edges " << t.curve.edges.size() << " cells "
        << t.subdivision.cells.size() << "\n";
  } else {
    Json j;
    j["schema"] = "tropicount.tropicalization/1";
    j["curve"] = ept_json(t.curve);
    j["subdivision"] = subdivision_json(t.subdivision);
    out << dump(j);
  }
  return kPass;
}

void error_document(std::ostream& out, const std::string& rule, const std::string& message) {
  Json j;
  j["schema"] = "tropicount.error/1";
  j["rule"] = rule;
  j["message"] = message;
  out << dump(j);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tropical curve counts, weights and patchworking hypotheses"};
  app.require_subcommand(1);
  Flags f;
  auto format = [&](CLI::App* sub) {
    sub->add_option("--format", f.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  };

  auto* validate = app.add_subcommand("validate", "Check a curve file against the structural and hypothesis rules");
  validate->add_option("file", f.file, "curve document")->required();
  validate->add_flag("--genericity", f.genericity, "run the bounded genericity search inside the T checks");
  validate->add_option("--budget", f.budget, "candidate budget for the genericity search");
  format(validate);

  auto* weight = app.add_subcommand("weight", "Complex and real weights of a marked curve");
  weight->add_option("file", f.file, "curve document")->required();
  weight->add_flag("--real", f.real, "also compute the real weight");
  weight->add_option("--seed", f.seed, "perturbation seed for star deformations");
  format(weight);

  auto* enumerate = app.add_subcommand("enumerate", "Count curves through a stretched configuration");
  auto* degree = enumerate->add_option("--degree", f.degree, "plane curves of this degree");
  enumerate->add_option("--polygon", f.polygon, "Newton polygon vertices as x,y")->excludes(degree);
  enumerate->add_option("--genus", f.genus, "genus of the counted curves");
  enumerate->add_option("--seed", f.seed, "configuration seed");
  enumerate->add_flag("--real", f.real, "also count with real weights");
  enumerate->add_option("--render", f.render, "write an SVG picture here");
  format(enumerate);

  auto* trop = app.add_subcommand("tropicalize", "Tropical curve of a valuated polynomial");
  trop->add_option("file", f.file, "polynomial document")->required();
  format(trop);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kInputFailure;
  }

  try {
    if (validate->parsed()) return cmd_validate(f, out);
    if (weight->parsed()) return cmd_weight(f, out);
    if (enumerate->parsed()) return cmd_enumerate(f, out);
    return cmd_tropicalize(f, out);
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kInputFailure;
  } catch (const HypothesisError& e) {
    err << e.what() << "\n";
    error_document(out, e.rule(), e.what());
    return kDomainFailure;
  } catch (const Error& e) {
    err << e.what() << "\n";
    error_document(out, "error", e.what());
    return kDomainFailure;
  }
}

}  // namespace tropicount::cli
