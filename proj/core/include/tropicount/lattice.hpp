#pragma once

#include "tropicount/arith.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace tropicount {

struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

LatticePoint operator+(LatticePoint a, LatticePoint b);
LatticePoint operator-(LatticePoint a, LatticePoint b);
LatticePoint operator-(LatticePoint a);
LatticePoint operator*(std::int64_t k, LatticePoint a);

std::int64_t cross(LatticePoint a, LatticePoint b);
std::int64_t dot(LatticePoint a, LatticePoint b);
// Counterclockwise quarter turn.
LatticePoint rotate_ccw(LatticePoint a);
bool is_zero(LatticePoint a);
// Strict order of nonzero vectors by polar angle in [0, 2pi).
bool angle_less(LatticePoint a, LatticePoint b);

struct RationalPoint {
  Rational x;
  Rational y;

  RationalPoint() = default;
  RationalPoint(Rational x_, Rational y_) : x(std::move(x_)), y(std::move(y_)) {}
  explicit RationalPoint(LatticePoint p) : x(p.x), y(p.y) {}

  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
  friend bool operator<(const RationalPoint& a, const RationalPoint& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  }
};

RationalPoint operator+(const RationalPoint& a, const RationalPoint& b);
RationalPoint operator-(const RationalPoint& a, const RationalPoint& b);
RationalPoint operator*(const Rational& k, const RationalPoint& a);
RationalPoint operator*(const Rational& k, LatticePoint a);
Rational cross(const RationalPoint& a, const RationalPoint& b);
Rational cross(LatticePoint a, const RationalPoint& b);
Rational dot(LatticePoint a, const RationalPoint& b);

struct WeightedDirection {
  LatticePoint primitive;
  std::int64_t weight = 1;

  LatticePoint vector() const { return weight * primitive; }
  friend auto operator<=>(const WeightedDirection&, const WeightedDirection&) = default;
};

// Throws Error("zero direction") on (0,0).
WeightedDirection primitive_decompose(LatticePoint v);

// Primitive integer direction of a nonzero rational vector.
LatticePoint primitive_of(const RationalPoint& v);

struct PolygonSide {
  LatticePoint start;
  LatticePoint end;
  LatticePoint normal;  // primitive exterior normal
  std::int64_t length = 0;
};

// Convex lattice polygon, segment or point. Vertices run counterclockwise from the
// lexicographically smallest one; no three consecutive vertices are collinear.
class LatticePolygon {
 public:
  LatticePolygon() = default;
  static LatticePolygon hull(std::vector<LatticePoint> points);

  const std::vector<LatticePoint>& vertices() const noexcept { return vertices_; }
  bool empty() const noexcept { return vertices_.empty(); }
  int dimension() const noexcept;

  LatticePolygon translated(LatticePoint by) const;
  // Lexicographically smallest vertex moved to the origin.
  LatticePolygon canonical() const;
  LatticePoint min_corner() const;

  // Sides with exterior normals, counterclockwise. A segment has two opposite sides.
  std::vector<PolygonSide> sides() const;
  // Index into sides() whose exterior normal equals `normal`, or -1.
  int side_with_normal(LatticePoint normal) const;

  bool contains(LatticePoint p) const;
  bool contains_in_interior(LatticePoint p) const;

  friend bool operator==(const LatticePolygon&, const LatticePolygon&) = default;
  friend bool operator<(const LatticePolygon& a, const LatticePolygon& b) { return a.vertices_ < b.vertices_; }

 private:
  std::vector<LatticePoint> vertices_;
};

std::int64_t lattice_volume(const LatticePolygon& p);

struct LatticePointSplit {
  std::vector<LatticePoint> interior;
  std::vector<LatticePoint> boundary;
};

// Interior is relative to the affine span, so a segment has its endpoints on the boundary.
LatticePointSplit lattice_points(const LatticePolygon& p);

LatticePolygon minkowski_sum(std::span<const LatticePolygon> parts);
LatticePolygon minkowski_sum(const LatticePolygon& a, const LatticePolygon& b);

// Polygon whose counterclockwise boundary is the given edge vectors sorted by angle.
// The vectors must sum to zero. The result starts at the origin before canonical shift.
LatticePolygon polygon_from_edge_vectors(std::vector<LatticePoint> edges);

// Delta' + Delta'' = Delta for some lattice polygon Delta''.
bool is_minkowski_summand(const LatticePolygon& part, const LatticePolygon& whole);

// Lattice length of the face of p maximizing <normal, .>; zero if that face is a vertex.
std::int64_t face_length(const LatticePolygon& p, LatticePoint normal);

}  // namespace tropicount
