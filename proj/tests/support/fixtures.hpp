#pragma once

#include "support/builder.hpp"

#include "tropicount/enumerate.hpp"

namespace tropicount::testing {

inline LatticePolygon triangle(int d) { return LatticePolygon::hull({{0, 0}, {d, 0}, {0, d}}); }

// Unmarked tripod of the line at `at`.
inline CurveBuilder tripod(RationalPoint at = pt(0, 0)) {
  CurveBuilder b;
  int v = b.vertex(std::move(at));
  b.end(v, {-1, 0});
  b.end(v, {0, -1});
  b.end(v, {1, 1});
  return b;
}

inline EnumerationResult plane_curves(int d, int g, std::uint64_t seed = 0) {
  return count_complex(make_problem(triangle(d), g, seed));
}

}  // namespace tropicount::testing
