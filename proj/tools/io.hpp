#pragma once

#include "tropicount/duality.hpp"
#include "tropicount/enumerate.hpp"
#include "tropicount/weights.hpp"

#include "json.hpp"

#include <optional>
#include <string>

namespace tropicount::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kCurveSchema = "tropicount.curve/1";
inline constexpr const char* kConfigSchema = "tropicount.config/1";
inline constexpr const char* kTropSchema = "tropicount.trop/1";

// A curve file: the marked curve and, when present, its real structure.
struct CurveDocument {
  MarkedCurve curve;
  std::optional<RealMarkedCurve> real;
};

struct ConfigDocument {
  Configuration config;
  std::vector<int> weights;
  std::optional<std::uint64_t> seed;
};

std::string to_string(const Rational& r);
// Accepts "p/q" or an integer; throws ParseError.
Rational parse_rational(const std::string& s);

Json rational_json(const Rational& r);
Json point_json(const RationalPoint& p);
Json lattice_json(LatticePoint p);
Json polygon_json(const LatticePolygon& p);

Json curve_json(const MarkedCurve& m);
Json curve_json(const RealMarkedCurve& r);
// Throws ParseError on a malformed document.
CurveDocument parse_curve(const Json& j);

Json config_json(const ConfigDocument& d);
ConfigDocument parse_config(const Json& j);

ValuatedPolynomial parse_polynomial(const Json& j);
Json polynomial_json(const ValuatedPolynomial& p);

Json report_json(const ValidationReport& r);
Json ept_json(const EPTCurve& t);
Json subdivision_json(const DualSubdivision& s);
Json breakdown_json(const WeightBreakdown& w);
Json breakdown_json(const RealWeightBreakdown& w);
Json enumeration_json(const EnumerationProblem& p, const EnumerationResult& r);

// Reads and parses a JSON file; throws ParseError.
Json read_json_file(const std::string& path);
// Two-space indentation with a trailing newline.
std::string dump(const Json& j);

}  // namespace tropicount::cli
