#include "doctest.h"

#include "commands.hpp"
#include "io.hpp"
#include "support/fixtures.hpp"
#include "support/real_curves.hpp"
#include "svg.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace tropicount;
using namespace tropicount::cli;
using namespace tropicount::testing;

namespace {

const std::string kData = TROPICOUNT_TEST_DATA;

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_of(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("rationals") {
    CHECK(cli::to_string(Rational(3, 6)) == "1/2");
    CHECK(cli::to_string(Rational(-4)) == "-4");
    CHECK(cli::parse_rational("-7/21") == Rational(-1, 3));
    CHECK_THROWS_AS(cli::parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(cli::parse_rational("x"), ParseError);
  }

  TEST_CASE("curve documents round trip byte for byte") {
    for (int d = 1; d <= 3; ++d)
      for (const auto& c : plane_curves(d, 0).curves) {
        std::string once = dump(curve_json(c.curve));
        auto doc = parse_curve(Json::parse(once));
        CHECK_FALSE(doc.real.has_value());
        CHECK(dump(curve_json(doc.curve)) == once);
        CHECK(canonical_form(doc.curve) == c.canonical);
      }
    for (const auto& r : eligible_real_curves()) {
      std::string once = dump(curve_json(r));
      auto doc = parse_curve(Json::parse(once));
      REQUIRE(doc.real.has_value());
      CHECK(dump(curve_json(*doc.real)) == once);
      CHECK(doc.real->tags == r.tags);
    }
  }

  TEST_CASE("config documents round trip") {
    auto res = plane_curves(3, 0, 5);
    ConfigDocument d{res.config, {}, 5};
    std::string once = dump(config_json(d));
    auto back = parse_config(Json::parse(once));
    CHECK(back.seed == std::optional<std::uint64_t>(5));
    CHECK(dump(config_json(back)) == once);
    CHECK(back.config.points == res.config.points);
  }

  TEST_CASE("malformed documents") {
    CHECK_THROWS_AS(parse_curve(Json::parse(R"({"schema": "tropicount.curve/1"})")), ParseError);
    CHECK_THROWS_AS(parse_curve(Json::parse(R"({"schema": "other", "vertices": [], "edges": []})")), ParseError);
    CHECK_THROWS_AS(read_json_file(kData + "/does-not-exist.json"), ParseError);
  }

  TEST_CASE("validate exit codes") {
    auto ok = run_cli({"validate", kData + "/tripod.curve.json"});
    CHECK(ok.code == kPass);
    CHECK(ok.out.find("\"ok\": true") != std::string::npos);
    auto bad = run_cli({"validate", kData + "/unbalanced.curve.json"});
    CHECK(bad.code == kDomainFailure);
    CHECK(bad.out.find("vertex 0") != std::string::npos);
    CHECK(run_cli({"validate", kData + "/malformed.curve.json"}).code == kInputFailure);
    CHECK(run_cli({"validate", kData + "/missing.curve.json"}).code == kInputFailure);
    CHECK(run_cli({"frobnicate"}).code == kInputFailure);
    auto text = run_cli({"validate", kData + "/unbalanced.curve.json", "--format", "text"});
    CHECK(text.code == kDomainFailure);
    CHECK(text.out.find("balancing") != std::string::npos);
  }

  TEST_CASE("weight command") {
    for (const char* seed : {"0", "1", "42"}) {
      auto r = run_cli({"weight", kData + "/star.curve.json", "--seed", seed});
      CHECK(r.code == kPass);
      auto j = Json::parse(r.out);
      CHECK(j["complex"]["total"] == "8");
    }
    auto even = run_cli({"weight", kData + "/even_edge.curve.json", "--real"});
    REQUIRE(even.code == kPass);
    auto j = Json::parse(even.out);
    CHECK(j["complex"]["total"] == "4");
    CHECK(j["real"]["total"] == "0");
    auto bad = run_cli({"weight", kData + "/unbalanced.curve.json"});
    CHECK(bad.code == kDomainFailure);
  }

  TEST_CASE("enumerate command") {
    auto a = run_cli({"enumerate", "--degree", "3", "--genus", "0", "--seed", "7"});
    auto b = run_cli({"enumerate", "--degree", "3", "--genus", "0", "--seed", "7"});
    REQUIRE(a.code == kPass);
    CHECK(a.out == b.out);
    auto j = Json::parse(a.out);
    CHECK(j["total_complex"] == "12");
    CHECK(j["curves"].size() == 9);
    auto poly = run_cli({"enumerate", "--polygon", "0,0", "2,0", "0,2", "--real"});
    REQUIRE(poly.code == kPass);
    CHECK(Json::parse(poly.out)["total_real"] == "1");
    CHECK(run_cli({"enumerate", "--degree", "0"}).code != kPass);
  }

  TEST_CASE("rendering") {
    auto res = plane_curves(3, 0, 7);
    std::string svg = render_svg(res);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    std::size_t edges = 0;
    for (const auto& c : res.curves) edges += c.curve.curve.graph.edges.size();
    CHECK(svg_path_count(res) == edges);
    CHECK(count_of(svg, "<path") == edges);
    CHECK(count_of(svg, "<circle") == res.config.points.size());
    CHECK(count_of(svg, "<polygon") >= res.curves.size());
    CHECK(count_of(svg, "<") == count_of(svg, ">"));

    auto path = std::filesystem::temp_directory_path() / "tropicount-test.svg";
    auto r = run_cli({"enumerate", "--degree", "3", "--seed", "7", "--render", path.string()});
    CHECK(r.code == kPass);
    std::ifstream in(path);
    std::stringstream file;
    file << in.rdbuf();
    CHECK(file.str() == svg);
    std::filesystem::remove(path);
  }

  TEST_CASE("tropicalize command") {
    auto conic = run_cli({"tropicalize", kData + "/conic.trop.json"});
    REQUIRE(conic.code == kPass);
    CHECK(Json::parse(conic.out)["subdivision"]["cells"].size() == 4);
    auto line = run_cli({"tropicalize", kData + "/line.trop.json"});
    REQUIRE(line.code == kPass);
    CHECK(Json::parse(line.out)["curve"]["edges"].size() == 3);
    auto mono = run_cli({"tropicalize", kData + "/monomial.trop.json"});
    CHECK(mono.code == kDomainFailure);
    CHECK(mono.out.find("curve is empty") != std::string::npos);
  }
}
