#pragma once

#include "tropicount/curve.hpp"
#include "tropicount/position.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tropicount {

struct VertexTriangle {
  int vertex = -1;
  LatticePolygon polygon;
  std::int64_t volume = 0;
};

VertexTriangle vertex_triangle(const PPTCurve& c, int v);

struct Factor {
  std::string rule;
  std::string location;
  Rational value;
};

struct WeightBreakdown {
  std::vector<Factor> vertices;
  std::vector<Factor> edges;
  std::vector<Factor> marks;
  Rational total;
};

struct RealWeightBreakdown {
  Integer l1;
  Integer l2;
  std::vector<Factor> factors;
  Rational total;
};

struct WeightOptions {
  std::uint64_t seed = 0;
  int retries = 8;
};

// M1-M5. Throws HypothesisError naming the failed condition (regularity, pseudo-simple, T1, T2, ...).
WeightBreakdown complex_weight(const MarkedCurve& m, const WeightOptions& options = {});

// Product of vertex volumes over the weights of ends marked at infinity.
// Throws HypothesisError("simple") on a vertex of valency above 3.
Rational simple_weight(const MarkedCurve& m);

// Local deformation of a high-valency vertex: simple rational curves whose ends are the
// given weighted directions, all but the last end passing through perturbed points near
// `center + primitive`.
struct StarDeformation {
  std::vector<MarkedCurve> curves;
  std::uint64_t seed_used = 0;
};

StarDeformation deform_star(const RationalPoint& center, const std::vector<WeightedDirection>& ends,
                            const WeightOptions& options);

// Ends of the star at v with the emanating edge last, as used by the M5 rule.
std::vector<WeightedDirection> star_ends(const MarkedCurve& m, int v, const Orientation& o);

// R1-R5 on a real curve.
ValidationReport real_structure_report(const RealMarkedCurve& r);

// W1-W5. Throws HypothesisError on R1-R5 violations or an unsupported W5 star.
RealWeightBreakdown real_weight(const RealMarkedCurve& r, const WeightOptions& options = {});

}  // namespace tropicount
