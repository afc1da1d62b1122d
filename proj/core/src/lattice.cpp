#include "tropicount/lattice.hpp"

#include "tropicount/error.hpp"

#include <algorithm>
#include <cstdlib>

namespace tropicount {

LatticePoint operator+(LatticePoint a, LatticePoint b) { return {checked_add(a.x, b.x), checked_add(a.y, b.y)}; }
LatticePoint operator-(LatticePoint a, LatticePoint b) { return {checked_add(a.x, -b.x), checked_add(a.y, -b.y)}; }
LatticePoint operator-(LatticePoint a) { return {-a.x, -a.y}; }
LatticePoint operator*(std::int64_t k, LatticePoint a) { return {checked_mul(k, a.x), checked_mul(k, a.y)}; }

std::int64_t cross(LatticePoint a, LatticePoint b) {
  return checked_add(checked_mul(a.x, b.y), -checked_mul(a.y, b.x));
}
std::int64_t dot(LatticePoint a, LatticePoint b) { return checked_add(checked_mul(a.x, b.x), checked_mul(a.y, b.y)); }
LatticePoint rotate_ccw(LatticePoint a) { return {-a.y, a.x}; }
bool is_zero(LatticePoint a) { return a.x == 0 && a.y == 0; }

namespace {
int half_plane(LatticePoint a) { return (a.y < 0 || (a.y == 0 && a.x < 0)) ? 1 : 0; }
}  // namespace

bool angle_less(LatticePoint a, LatticePoint b) {
  int ha = half_plane(a), hb = half_plane(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

RationalPoint operator+(const RationalPoint& a, const RationalPoint& b) { return {a.x + b.x, a.y + b.y}; }
RationalPoint operator-(const RationalPoint& a, const RationalPoint& b) { return {a.x - b.x, a.y - b.y}; }
RationalPoint operator*(const Rational& k, const RationalPoint& a) { return {k * a.x, k * a.y}; }
RationalPoint operator*(const Rational& k, LatticePoint a) { return {k * a.x, k * a.y}; }
Rational cross(const RationalPoint& a, const RationalPoint& b) { return a.x * b.y - a.y * b.x; }
Rational cross(LatticePoint a, const RationalPoint& b) { return a.x * b.y - a.y * b.x; }
Rational dot(LatticePoint a, const RationalPoint& b) { return a.x * b.x + a.y * b.y; }

WeightedDirection primitive_decompose(LatticePoint v) {
  if (is_zero(v)) throw Error("zero direction");
  std::int64_t g = gcd64(std::llabs(v.x), std::llabs(v.y));
  return {{v.x / g, v.y / g}, g};
}

LatticePoint primitive_of(const RationalPoint& v) {
  if (v.x == 0 && v.y == 0) throw Error("zero direction");
  Integer lcm_den = boost::multiprecision::lcm(denominator_of(v.x), denominator_of(v.y));
  Rational sx = v.x * lcm_den, sy = v.y * lcm_den;
  Integer ix = numerator_of(sx), iy = numerator_of(sy);
  Integer g = boost::multiprecision::gcd(abs(ix), abs(iy));
  return {to_int64(ix / g), to_int64(iy / g)};
}

LatticePolygon LatticePolygon::hull(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  LatticePolygon out;
  if (pts.size() <= 2) {
    out.vertices_ = pts;
    return out;
  }
  std::vector<LatticePoint> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], p - h[k - 2]) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    const auto& p = pts[i];
    while (k >= t && cross(h[k - 1] - h[k - 2], p - h[k - 2]) <= 0) --k;
    h[k++] = p;
  }
  h.resize(k - 1);
  if (h.size() == 2 || h.size() < 2) {
    // all points collinear: keep the two extremes
    out.vertices_ = {pts.front(), pts.back()};
    return out;
  }
  out.vertices_ = std::move(h);
  return out;
}

int LatticePolygon::dimension() const noexcept {
  if (vertices_.empty()) return -1;
  if (vertices_.size() == 1) return 0;
  if (vertices_.size() == 2) return 1;
  return 2;
}

LatticePolygon LatticePolygon::translated(LatticePoint by) const {
  LatticePolygon out = *this;
  for (auto& v : out.vertices_) v = v + by;
  return out;
}

LatticePoint LatticePolygon::min_corner() const {
  if (vertices_.empty()) throw Error("empty polygon");
  return vertices_.front();
}

LatticePolygon LatticePolygon::canonical() const {
  if (vertices_.empty()) return *this;
  return translated(-min_corner());
}

std::vector<PolygonSide> LatticePolygon::sides() const {
  std::vector<PolygonSide> out;
  auto make = [](LatticePoint a, LatticePoint b) {
    LatticePoint d = b - a;
    auto wd = primitive_decompose(d);
    return PolygonSide{a, b, {wd.primitive.y, -wd.primitive.x}, wd.weight};
  };
  if (dimension() == 1) {
    out.push_back(make(vertices_[0], vertices_[1]));
    out.push_back(make(vertices_[1], vertices_[0]));
  } else if (dimension() == 2) {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      out.push_back(make(vertices_[i], vertices_[(i + 1) % vertices_.size()]));
  }
  return out;
}

int LatticePolygon::side_with_normal(LatticePoint normal) const {
  auto s = sides();
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i].normal == normal) return static_cast<int>(i);
  return -1;
}

namespace {

bool on_segment(LatticePoint a, LatticePoint b, LatticePoint p) {
  if (cross(b - a, p - a) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

}  // namespace

bool LatticePolygon::contains(LatticePoint p) const {
  switch (dimension()) {
    case 0: return p == vertices_[0];
    case 1: return on_segment(vertices_[0], vertices_[1], p);
    case 2:
      for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const auto& a = vertices_[i];
        const auto& b = vertices_[(i + 1) % vertices_.size()];
        if (cross(b - a, p - a) < 0) return false;
      }
      return true;
    default: return false;
  }
}

bool LatticePolygon::contains_in_interior(LatticePoint p) const {
  switch (dimension()) {
    case 1: return on_segment(vertices_[0], vertices_[1], p) && p != vertices_[0] && p != vertices_[1];
    case 2:
      for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const auto& a = vertices_[i];
        const auto& b = vertices_[(i + 1) % vertices_.size()];
        if (cross(b - a, p - a) <= 0) return false;
      }
      return true;
    default: return false;
  }
}

std::int64_t lattice_volume(const LatticePolygon& p) {
  const auto& v = p.vertices();
  switch (p.dimension()) {
    case 1: return primitive_decompose(v[1] - v[0]).weight;
    case 2: {
      std::int64_t twice = 0;
      for (std::size_t i = 0; i < v.size(); ++i) twice = checked_add(twice, cross(v[i], v[(i + 1) % v.size()]));
      return std::llabs(twice);
    }
    default: return 0;
  }
}

LatticePointSplit lattice_points(const LatticePolygon& p) {
  LatticePointSplit out;
  if (p.empty()) return out;
  const auto& v = p.vertices();
  std::int64_t x0 = v[0].x, x1 = v[0].x, y0 = v[0].y, y1 = v[0].y;
  for (const auto& q : v) {
    x0 = std::min(x0, q.x), x1 = std::max(x1, q.x);
    y0 = std::min(y0, q.y), y1 = std::max(y1, q.y);
  }
  for (std::int64_t x = x0; x <= x1; ++x)
    for (std::int64_t y = y0; y <= y1; ++y) {
      LatticePoint q{x, y};
      if (!p.contains(q)) continue;
      if (p.contains_in_interior(q))
        out.interior.push_back(q);
      else
        out.boundary.push_back(q);
    }
  return out;
}

LatticePolygon minkowski_sum(std::span<const LatticePolygon> parts) {
  if (parts.empty()) throw Error("minkowski_sum of an empty list");
  std::vector<LatticePoint> acc = parts.front().vertices();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    std::vector<LatticePoint> next;
    next.reserve(acc.size() * parts[i].vertices().size());
    for (const auto& a : acc)
      for (const auto& b : parts[i].vertices()) next.push_back(a + b);
    acc = LatticePolygon::hull(std::move(next)).vertices();
  }
  return LatticePolygon::hull(std::move(acc));
}

LatticePolygon minkowski_sum(const LatticePolygon& a, const LatticePolygon& b) {
  const LatticePolygon parts[] = {a, b};
  return minkowski_sum(std::span<const LatticePolygon>(parts));
}

LatticePolygon polygon_from_edge_vectors(std::vector<LatticePoint> edges) {
  LatticePoint sum{};
  for (const auto& e : edges) sum = sum + e;
  if (!is_zero(sum)) throw Error("edge vectors do not close up");
  std::stable_sort(edges.begin(), edges.end(), angle_less);
  std::vector<LatticePoint> pts{{0, 0}};
  LatticePoint cur{};
  for (const auto& e : edges) {
    cur = cur + e;
    pts.push_back(cur);
  }
  return LatticePolygon::hull(std::move(pts));
}

std::int64_t face_length(const LatticePolygon& p, LatticePoint normal) {
  int i = p.side_with_normal(normal);
  return i < 0 ? 0 : p.sides()[static_cast<std::size_t>(i)].length;
}

bool is_minkowski_summand(const LatticePolygon& part, const LatticePolygon& whole) {
  if (part.dimension() <= 0) return !whole.empty();
  for (const auto& s : part.sides())
    if (face_length(whole, s.normal) < s.length) return false;
  return true;
}

}  // namespace tropicount
