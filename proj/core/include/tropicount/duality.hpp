#pragma once

#include "tropicount/curve.hpp"

#include <map>
#include <utility>
#include <vector>

namespace tropicount {

// Values recorded at lattice points of the carrier; other points are induced per cell.
struct PLFunction {
  LatticePolygon carrier;
  std::map<LatticePoint, Rational> values;
};

// Cells are two-dimensional unless the carrier itself is a segment.
struct DualSubdivision {
  LatticePolygon polygon;
  std::vector<LatticePolygon> cells;
  PLFunction nu;
};

struct ComplexRational {
  Rational re;
  Rational im;
};

// `valuation[w]` is the exponent nu(w) of the leading term, so c_w = -nu(w) in the max.
struct ValuatedPolynomial {
  std::map<LatticePoint, Rational> valuation;
  std::map<LatticePoint, ComplexRational> initial;
};

struct Tropicalization {
  EPTCurve curve;
  DualSubdivision subdivision;
};

// Polygon whose counterclockwise sides are the given vectors turned a quarter counterclockwise.
LatticePolygon polygon_of_outgoing(const std::vector<LatticePoint>& outgoing);
// Delta_v built from the weighted outgoing directions at a finite vertex.
LatticePolygon vertex_polygon(const PPTCurve& c, int v);

LatticePolygon newton_polygon(const PPTCurve& c);
LatticePolygon newton_polygon(const std::vector<WeightedDirection>& degree);

// Throws Error on unbalanced input or a disconnected image.
DualSubdivision dual_subdivision(const EPTCurve& t);
ValidationReport verify_duality(const EPTCurve& t, const DualSubdivision& s);

// Summands sigma_e and Delta_v whose Minkowski sum is the dual cell of V.
std::vector<LatticePolygon> vertex_cell_decomposition(const PPTCurve& c, const RationalPoint& v);

bool is_nodal(const DualSubdivision& s);

// Throws Error("curve is empty") for a single monomial.
Tropicalization tropicalize(const ValuatedPolynomial& p);

// Text form of the curve that is invariant under translation, for equality up to a shift.
std::string canonical_ept(const EPTCurve& t);

}  // namespace tropicount
