#pragma once

#include "tropicount/patchdata.hpp"
#include "tropicount/position.hpp"
#include "tropicount/weights.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tropicount {

// Polygon of a subdivision: a triangle, or a parallelogram a, b, c, a + c - b.
struct SubdivisionPiece {
  std::vector<LatticePoint> corners;
  bool parallelogram() const noexcept { return corners.size() == 4; }
};

// A lambda-increasing lattice path with one of its compression histories. The pieces tile
// the polygon; every step of the path is an edge of the tiling.
struct PathSubdivision {
  std::vector<LatticePoint> path;
  std::vector<SubdivisionPiece> pieces;
  // Product of triangle volumes.
  Integer multiplicity;
  // Zero when a triangle has an even side, else (-1) to the total interior point count.
  int real_sign = 0;
};

// Lattice points of delta ordered by lambda(x, y) = x - eps*y for tiny eps.
std::vector<LatticePoint> lambda_order(const LatticePolygon& delta);
// All lambda-increasing paths with `steps` steps between the lambda-extreme points.
std::vector<std::vector<LatticePoint>> lambda_paths(const LatticePolygon& delta, int steps);
// Every compression history of the path on both sides.
std::vector<PathSubdivision> compress_path(const LatticePolygon& delta, const std::vector<LatticePoint>& path);

struct EnumeratedType {
  CombinatorialType type;
  PathSubdivision subdivision;
};

struct TypeDiagnostics {
  std::size_t histories = 0;
  std::size_t lines = 0;
  std::size_t shared_strips = 0;
  std::size_t wrong_genus = 0;
};

// Types of curves with Newton polygon delta and genus g matching a stretched
// configuration, with mark i on the point that comes i-th along the stretched line.
// Only the layout without boundary points is supported.
std::vector<EnumeratedType> enumerate_types(const LatticePolygon& delta, int g, const MarkLayout& layout,
                                            TypeDiagnostics* diagnostics = nullptr);

// Interior point count for the layout without boundary points.
MarkLayout default_layout(const LatticePolygon& delta, int g);

struct EnumerationProblem {
  LatticePolygon polygon;
  int genus = 0;
  MarkLayout layout;
  std::uint64_t seed = 0;
  // Empty means every point is real.
  std::vector<Reality> tags;
  WeightOptions weights;
  int retries = 8;
};

EnumerationProblem make_problem(const LatticePolygon& delta, int g, std::uint64_t seed);

struct EnumeratedCurve {
  MarkedCurve curve;
  std::string canonical;
  std::size_t type_index = 0;
  WeightBreakdown weight;
  std::optional<RealWeightBreakdown> real;
  Integer path_multiplicity;
  int path_real_sign = 0;
};

struct EnumerationDiagnostics {
  std::uint64_t seed_used = 0;
  int reseeds = 0;
  std::size_t types = 0;
  std::size_t solved = 0;
  std::size_t no_solution = 0;
  std::size_t duplicates = 0;
  TypeDiagnostics generation;
};

struct EnumerationResult {
  Configuration config;
  std::vector<EnumeratedCurve> curves;
  Rational total_complex;
  std::optional<Rational> total_real;
  EnumerationDiagnostics diagnostics;
};

// Throws GenericityError when every reseed leaves a degenerate or non-exhaustive solution.
EnumerationResult count_complex(const EnumerationProblem& p);
// Also computes real weights; only totally real configurations are supported.
EnumerationResult count_real(const EnumerationProblem& p);

struct InvarianceReport {
  bool ok = false;
  std::vector<Rational> complex_totals;
  std::vector<Rational> real_totals;
};

InvarianceReport invariance_check(const LatticePolygon& delta, int g, const std::vector<std::uint64_t>& seeds, bool real);

// Algebraic data over the configuration of an enumerated curve: one real point per
// configuration point with pseudo-random real initial coefficients.
KConfiguration make_kconfiguration(const MarkedCurve& m, const Configuration& cfg, std::uint64_t seed);

// Worker count from TROPICOUNT_THREADS, else the hardware concurrency.
unsigned worker_count();

}  // namespace tropicount
