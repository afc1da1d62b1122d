#pragma once

#include "tropicount/curve.hpp"
#include "tropicount/duality.hpp"
#include "tropicount/position.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace tropicount {

// Finitely supported vector (alpha_1, alpha_2, ...) of nonnegative integers.
struct MultiplicityVector {
  std::map<int, std::int64_t> entries;

  std::int64_t at(int i) const;
  void add(int i, std::int64_t count = 1);
  friend bool operator==(const MultiplicityVector& a, const MultiplicityVector& b);
};

struct Norms {
  std::int64_t zero = 0;
  std::int64_t one = 0;
  friend bool operator==(const Norms&, const Norms&) = default;
};

Norms norms(const MultiplicityVector& a);
// Componentwise a >= b.
bool dominates(const MultiplicityVector& a, const MultiplicityVector& b);

// Side index of the polygon (as in LatticePolygon::sides) to the tally of end weights.
using BoundaryVectors = std::map<int, MultiplicityVector>;

BoundaryVectors boundary_vectors(const PPTCurve& c, const LatticePolygon& delta);

// A point of the algebraic configuration: its valuation (interior or boundary),
// a pair of nonzero initial coefficients, and its complex-conjugate partner.
struct KPoint {
  ConfigPoint valuation;
  std::array<ComplexRational, 2> initial;
  int conjugate = -1;  // own index for a real point; -1 when no real structure is given
};

struct KConfiguration {
  LatticePolygon polygon;
  std::vector<KPoint> points;
  // Boundary point index to mark index at infinity.
  std::map<int, int> psi;
};

// Point index to mu, over the interior points.
using Multiplicities = std::map<int, std::int64_t>;

// Throws HypothesisError naming A1, A2 or A3.
Multiplicities multiplicity_function(const MarkedCurve& m, const KConfiguration& k);

std::int64_t boundary_point_count(const KConfiguration& k);
bool check_euler(const MarkedCurve& m, const KConfiguration& k, int g);

// Everything a compatible tuple is measured against.
struct PatchContext {
  MarkedCurve curve;
  KConfiguration config;
  LatticePolygon delta;
  Multiplicities mu;
  BoundaryVectors beta;
  int genus = 0;
};

PatchContext make_context(const MarkedCurve& m, const KConfiguration& k);

struct CompatibleTuple {
  LatticePolygon part;
  int genus = 0;
  std::vector<int> points;
  Multiplicities mu;
  BoundaryVectors beta;
};

CompatibleTuple full_tuple(const PatchContext& ctx);

// Rules: "subset", "degree", "tangency", "genus", "euler". Throws Error when `part` is not
// a Minkowski summand of the full polygon.
ValidationReport check_compatible(const CompatibleTuple& t, const PatchContext& ctx);

struct SpecialEdgePair {
  int vertex = -1;
  int first = -1;
  int second = -1;
  // Marks inside the two matched regions, paired by the h-preserving identification.
  std::vector<std::pair<int, int>> matched_marks;
  std::vector<int> region_marks;
};

struct SpecialData {
  std::vector<std::pair<int, int>> point_pairs;  // i < j
  std::vector<SpecialEdgePair> edge_pairs;
  std::vector<int> vertices;
};

SpecialData detect_special(const MarkedCurve& m);

struct TOptions {
  bool genericity = false;
  std::size_t budget = 2000;
};

ValidationReport check_T(const MarkedCurve& m, const TOptions& options = {});
// R1-R7; R6 and R7 read the conjugation of `k`.
ValidationReport check_R(const RealMarkedCurve& r, const KConfiguration& k);

enum class SurfaceKind { P2, P2Blown, P1xP1, Other };

struct SurfaceDescriptor {
  SurfaceKind kind = SurfaceKind::Other;
  int blowups = 0;
  // Self-intersection of the toric divisor of each side, indexed like LatticePolygon::sides.
  std::vector<int> divisor_squares;
};

// Reads the toric surface off the normal fan of the polygon.
SurfaceDescriptor describe_surface(const LatticePolygon& delta);

enum class A5Verdict { Holds, Unknown };

A5Verdict check_A5_criteria(const SurfaceDescriptor& surface, const KConfiguration& k, const Multiplicities& mu);

}  // namespace tropicount
