#pragma once

#include "tropicount/curve.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tropicount {

// A configuration point: interior of R^2, or a boundary point given by a side of the
// polygon and the intercept cross(u, x) of the lines closing up there.
struct ConfigPoint {
  std::optional<int> side;
  RationalPoint point;
  Rational parameter;

  static ConfigPoint interior(RationalPoint p) { return {std::nullopt, std::move(p), Rational(0)}; }
  static ConfigPoint boundary(int side, Rational parameter) { return {side, RationalPoint(), std::move(parameter)}; }
  bool on_boundary() const noexcept { return side.has_value(); }
  friend bool operator==(const ConfigPoint&, const ConfigPoint&) = default;
};

struct Configuration {
  LatticePolygon polygon;
  std::vector<ConfigPoint> points;
};

struct WeightedConfiguration {
  Configuration base;
  std::vector<int> weights;
};

// Counts of points to generate: interior, then per side of the polygon.
struct MarkLayout {
  int interior = 0;
  std::vector<int> per_side;
  int total() const;
};

// Mark placement without metric data.
struct MarkPlacement {
  int vertex = -1;
  int edge = -1;
  MarkClass cls = MarkClass::Simple;
  Mt mt = Mt::One;
};

// Graph lengths are ignored; ends are identified by their univalent vertex.
struct CombinatorialType {
  AbstractGraph graph;
  std::vector<WeightedDirection> directions;
  std::vector<MarkPlacement> marks;
};

// Reads the type of a marked curve (drops positions, lengths and offsets).
CombinatorialType type_of(const MarkedCurve& m);

// Rapidly stretched points on a line of tiny slope; bit-exact per seed.
Configuration stretched_config(const LatticePolygon& delta, const MarkLayout& layout, std::uint64_t seed);

enum class SolveStatus { Solved, NoSolution, Degenerate };

struct SolveOutcome {
  SolveStatus status = SolveStatus::NoSolution;
  std::optional<MarkedCurve> curve;
  std::string reason;
};

// Exact linear solve for the unique curve of type t with mark i on point i.
// `equation_order` optionally permutes the constraint rows; the result must not depend on it.
// Throws HypothesisError("regularity") for non-regular types unless `require_regular` is off
// (end-marked genericity witnesses are not regular).
SolveOutcome solve_type(const CombinatorialType& t, const Configuration& cfg,
                        const std::vector<std::size_t>* equation_order = nullptr, bool require_regular = true);
std::size_t equation_count(const CombinatorialType& t);

bool check_regular(const MarkedCurve& m);
bool check_regular(const AbstractGraph& g, const std::vector<MarkPlacement>& marks);

// Orientation of the unmarked components: each unmarked finite vertex has exactly
// one emanating edge; `toward[e]` is the endpoint e points to, or -1 when a mark
// inside e makes both halves point away from it.
struct Orientation {
  std::vector<int> outgoing;
  std::vector<int> toward;
};

// Throws HypothesisError("regularity") when a component has zero or several unmarked ends,
// and HypothesisError("orientation") when an emanating edge is multiple.
Orientation orient_components(const MarkedCurve& m);

// Every preimage of a configuration point is a mark, and marks sit on their points.
bool marks_exhaust_preimages(const MarkedCurve& m, const Configuration& cfg);

enum class GenericityVerdict { Generic, Witness, Inconclusive };

struct GenericityResult {
  GenericityVerdict verdict = GenericityVerdict::Inconclusive;
  std::optional<MarkedCurve> witness;
  std::vector<int> witness_weights;
  std::size_t examined = 0;
};

// Bounded search for end-marked irreducible rational curves through weighted
// subconfigurations. `budget` caps the number of (type, assignment) candidates.
GenericityResult check_delta_generic(const WeightedConfiguration& cfg, const LatticePolygon& delta,
                                     std::size_t budget);

}  // namespace tropicount
