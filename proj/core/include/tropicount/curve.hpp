#pragma once

#include "tropicount/lattice.hpp"
#include "tropicount/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tropicount {

// Positive rational length or the infinite length of an end.
class Length {
 public:
  static Length infinite() { return Length(); }
  explicit Length(Rational value) : finite_(true), value_(std::move(value)) {}

  bool is_infinite() const noexcept { return !finite_; }
  const Rational& value() const;

  friend bool operator==(const Length&, const Length&) = default;

 private:
  Length() = default;
  bool finite_ = false;
  Rational value_;
};

enum class VertexKind { Finite, AtInfinity };

struct GraphEdge {
  int tail = -1;
  int head = -1;
  Length length = Length::infinite();
};

struct AbstractGraph {
  std::vector<VertexKind> vertices;
  std::vector<GraphEdge> edges;

  int vertex_count() const noexcept { return static_cast<int>(vertices.size()); }
  int edge_count() const noexcept { return static_cast<int>(edges.size()); }
  bool is_finite(int v) const { return vertices.at(static_cast<std::size_t>(v)) == VertexKind::Finite; }
  std::vector<std::vector<int>> incidence() const;
};

// b1 - b0 + 1 on the graph with its univalent points at infinity removed.
int genus(const AbstractGraph& g);

// Throws StructuralError on bad indices, divalent or isolated vertices, ends without a
// finite endpoint, finite edges at infinity, or non-positive finite lengths.
void check_structure(const AbstractGraph& g);

// Ends are stored with the finite vertex as tail; `directions[e]` is dh(tau_tail(e)).
struct PPTCurve {
  AbstractGraph graph;
  std::vector<std::optional<RationalPoint>> positions;
  std::vector<WeightedDirection> directions;

  bool is_end(int e) const;
  int other_end(int e, int v) const;
  // Weighted outgoing vector of edge e at its endpoint v.
  LatticePoint outgoing(int e, int v) const;
  WeightedDirection outgoing_direction(int e, int v) const;
  const RationalPoint& position(int v) const;
  // Image of the point at metric distance `offset` from the tail.
  RationalPoint point_at(int e, const Rational& offset) const;
  std::int64_t weight(int e) const { return directions.at(static_cast<std::size_t>(e)).weight; }
  std::vector<int> finite_vertices() const;
  std::vector<int> ends() const;
  std::vector<int> bounded_edges() const;
};

// Full structural check including positions and primitive directions.
void check_structure(const PPTCurve& c);

// Optional points on the end images used for the rotated moment relation.
struct EndPoints {
  std::vector<int> ends;
  std::vector<RationalPoint> points;
};

ValidationReport validate_ppt(const PPTCurve& c, const EndPoints* end_points = nullptr);

std::vector<WeightedDirection> degree(const PPTCurve& c);

enum class CurveClass { Simple, PseudoSimple, Neither };
enum class EdgeTag { Simple, Multiple };

struct VertexTags {
  int vertex = -1;
  std::vector<int> edges;
  std::vector<EdgeTag> tags;
};

struct Classification {
  CurveClass kind = CurveClass::Neither;
  std::vector<VertexTags> high_valency;
};

Classification classify(const PPTCurve& c);
// Whether edge e is multiple at its endpoint v (another edge at v has the same primitive).
bool is_multiple_at(const PPTCurve& c, int e, int v);

// Points of the graph: a vertex or an interior point of an edge.
struct GraphPoint {
  int vertex = -1;
  int edge = -1;
  Rational offset;

  static GraphPoint at_vertex(int v) { return {v, -1, Rational(0)}; }
  static GraphPoint on_edge(int e, Rational t) { return {-1, e, std::move(t)}; }
  bool is_vertex() const noexcept { return vertex >= 0; }
  friend bool operator==(const GraphPoint&, const GraphPoint&) = default;
};

// Rewrites offsets 0 and length to the endpoint vertex.
GraphPoint normalize(const PPTCurve& c, GraphPoint p);
RationalPoint image(const PPTCurve& c, const GraphPoint& p);

enum class MarkClass { Simple, Double };
enum class Mt { One, First, Second, Both };

struct Mark {
  GraphPoint point;
  MarkClass cls = MarkClass::Simple;
  Mt mt = Mt::One;
  friend bool operator==(const Mark&, const Mark&) = default;
};

struct MarkedCurve {
  PPTCurve curve;
  std::vector<Mark> marks;

  bool mark_at_infinity(std::size_t i) const;
};

// Structure of marks: distinct points, valid addresses, class/mt consistency.
ValidationReport validate_marks(const MarkedCurve& m);

enum class Reality { Real, Imaginary };

struct RealMarkedCurve {
  MarkedCurve base;
  std::vector<int> vertex_map;
  std::vector<int> edge_map;
  std::vector<int> mark_map;
  std::vector<Reality> tags;

  bool fixed_vertex(int v) const { return vertex_map.at(static_cast<std::size_t>(v)) == v; }
  bool fixed_edge(int e) const { return edge_map.at(static_cast<std::size_t>(e)) == e; }
};

RealMarkedCurve with_identity_involution(const MarkedCurve& m);
// Throws Error if c is not an involutive automorphism commuting with h.
void check_involution(const RealMarkedCurve& r);

MarkedCurve quotient_by_involution(const RealMarkedCurve& r);
// Copies the edges in `doubled` (all of even weight); copied marks get the tag `copied`.
RealMarkedCurve double_curve(const MarkedCurve& m, const std::vector<int>& doubled,
                             Reality copied = Reality::Imaginary);

struct BoundaryLocation {
  enum class Kind { Side, Corner } kind = Kind::Side;
  int index = -1;
  Rational parameter;
  friend bool operator==(const BoundaryLocation&, const BoundaryLocation&) = default;
};

// Where the end closes up in the compactification of R^2 by the toric boundary of delta.
BoundaryLocation compactify_end(const PPTCurve& c, int end, const LatticePolygon& delta);
// Intercept parameter of the line through `through` with primitive direction u.
Rational boundary_parameter(LatticePoint u, const RationalPoint& through);

// Canonical string of the decorated graph: positions modulo translation, weights, marks.
std::string canonical_form(const MarkedCurve& m);
bool isomorphic(const MarkedCurve& a, const MarkedCurve& b);

struct EPTEdge {
  enum class Kind { Segment, Ray, Line } kind = Kind::Segment;
  int from = -1;
  int to = -1;
  RationalPoint anchor;  // a point on the line for Kind::Line
  LatticePoint direction;  // primitive, pointing away from `from`
  std::int64_t weight = 1;
};

struct EPTCurve {
  std::vector<RationalPoint> vertices;
  std::vector<EPTEdge> edges;
};

ValidationReport validate_ept(const EPTCurve& t);
EPTCurve push_forward(const PPTCurve& c);

}  // namespace tropicount
