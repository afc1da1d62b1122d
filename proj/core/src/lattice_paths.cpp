#include "tropicount/enumerate.hpp"

#include "tropicount/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace tropicount {

namespace {

// lambda(x, y) = x - eps*y compares like (x, -y).
bool lambda_less(LatticePoint a, LatticePoint b) { return a.x < b.x || (a.x == b.x && a.y > b.y); }

std::int64_t length_of(LatticePoint v) { return gcd64(std::llabs(v.x), std::llabs(v.y)); }

// Boundary lattice points counterclockwise, starting at the first polygon vertex.
std::vector<LatticePoint> boundary_cycle(const LatticePolygon& delta) {
  std::vector<LatticePoint> out;
  for (const auto& s : delta.sides()) {
    LatticePoint step{(s.end.x - s.start.x) / s.length, (s.end.y - s.start.y) / s.length};
    for (std::int64_t k = 0; k < s.length; ++k) out.push_back(s.start + k * step);
  }
  return out;
}

struct Chains {
  std::vector<LatticePoint> cw;   // left of a path running from p to q
  std::vector<LatticePoint> ccw;  // right of it
};

Chains boundary_chains(const LatticePolygon& delta, LatticePoint p, LatticePoint q) {
  auto cyc = boundary_cycle(delta);
  const std::size_t n = cyc.size();
  auto ip = static_cast<std::size_t>(std::find(cyc.begin(), cyc.end(), p) - cyc.begin());
  Chains c;
  for (std::size_t i = ip;; i = (i + 1) % n) {
    c.ccw.push_back(cyc[i]);
    if (cyc[i] == q) break;
  }
  for (std::size_t i = ip;; i = (i + n - 1) % n) {
    c.cw.push_back(cyc[i]);
    if (cyc[i] == q) break;
  }
  return c;
}

struct History {
  std::vector<SubdivisionPiece> pieces;
};

// Compresses toward `alpha`, turning at the first vertex where the path turns to `turn`
// (+1 left, -1 right).
void compress_side(const LatticePolygon& delta, std::vector<LatticePoint> path, const std::vector<LatticePoint>& alpha,
                   int turn, std::vector<SubdivisionPiece>& pieces, std::vector<History>& out) {
  if (path == alpha) {
    out.push_back({pieces});
    return;
  }
  std::size_t j = 1;
  for (; j + 1 < path.size(); ++j)
    if (cross(path[j] - path[j - 1], path[j + 1] - path[j]) * turn > 0) break;
  if (j + 1 >= path.size()) return;
  const LatticePoint a = path[j - 1], b = path[j], c = path[j + 1];

  auto skipped = path;
  skipped.erase(skipped.begin() + static_cast<std::ptrdiff_t>(j));
  pieces.push_back({{a, b, c}});
  compress_side(delta, std::move(skipped), alpha, turn, pieces, out);
  pieces.pop_back();

  const LatticePoint d = a + c - b;
  if (delta.contains(d) && lambda_less(a, d) && lambda_less(d, c)) {
    auto flipped = path;
    flipped[j] = d;
    pieces.push_back({{a, b, c, d}});
    compress_side(delta, std::move(flipped), alpha, turn, pieces, out);
    pieces.pop_back();
  }
}

struct TriangleData {
  std::int64_t volume = 0;
  int sign = 0;
};

TriangleData triangle_data(const SubdivisionPiece& t) {
  const auto& c = t.corners;
  TriangleData d;
  d.volume = std::llabs(cross(c[1] - c[0], c[2] - c[0]));
  std::int64_t boundary = 0;
  bool even = false;
  for (int i = 0; i < 3; ++i) {
    std::int64_t l = length_of(c[static_cast<std::size_t>((i + 1) % 3)] - c[static_cast<std::size_t>(i)]);
    boundary += l;
    even = even || l % 2 == 0;
  }
  const std::int64_t interior = (d.volume - boundary + 2) / 2;
  d.sign = even ? 0 : (interior % 2 == 0 ? 1 : -1);
  return d;
}

}  // namespace

std::vector<LatticePoint> lambda_order(const LatticePolygon& delta) {
  auto lp = lattice_points(delta);
  std::vector<LatticePoint> all = lp.interior;
  all.insert(all.end(), lp.boundary.begin(), lp.boundary.end());
  std::sort(all.begin(), all.end(), lambda_less);
  return all;
}

std::vector<std::vector<LatticePoint>> lambda_paths(const LatticePolygon& delta, int steps) {
  auto pts = lambda_order(delta);
  std::vector<std::vector<LatticePoint>> out;
  if (pts.size() < 2 || steps < 1 || static_cast<std::size_t>(steps) > pts.size() - 1) return out;
  std::vector<LatticePoint> cur{pts.front()};
  std::function<void(std::size_t, int)> pick = [&](std::size_t from, int left) {
    if (left == 0) {
      cur.push_back(pts.back());
      out.push_back(cur);
      cur.pop_back();
      return;
    }
    for (std::size_t i = from; i + 1 < pts.size() && pts.size() - 1 - i >= static_cast<std::size_t>(left); ++i) {
      cur.push_back(pts[i]);
      pick(i + 1, left - 1);
      cur.pop_back();
    }
  };
  pick(1, steps - 1);
  return out;
}

std::vector<PathSubdivision> compress_path(const LatticePolygon& delta, const std::vector<LatticePoint>& path) {
  auto chains = boundary_chains(delta, path.front(), path.back());
  std::vector<History> left, right;
  std::vector<SubdivisionPiece> scratch;
  compress_side(delta, path, chains.cw, +1, scratch, left);
  compress_side(delta, path, chains.ccw, -1, scratch, right);
  std::vector<PathSubdivision> out;
  for (const auto& l : left)
    for (const auto& r : right) {
      PathSubdivision s;
      s.path = path;
      s.pieces = l.pieces;
      s.pieces.insert(s.pieces.end(), r.pieces.begin(), r.pieces.end());
      s.multiplicity = 1;
      s.real_sign = 1;
      for (const auto& piece : s.pieces) {
        if (piece.parallelogram()) continue;
        auto td = triangle_data(piece);
        s.multiplicity *= td.volume;
        s.real_sign *= td.sign;
      }
      out.push_back(std::move(s));
    }
  return out;
}

MarkLayout default_layout(const LatticePolygon& delta, int g) {
  MarkLayout l;
  std::int64_t perimeter = 0;
  for (const auto& s : delta.sides()) perimeter += s.length;
  if (delta.dimension() == 1) perimeter /= 2;
  l.interior = static_cast<int>(perimeter) + g - 1;
  return l;
}

namespace {

using Segment = std::pair<LatticePoint, LatticePoint>;

Segment segment(LatticePoint a, LatticePoint b) { return a < b ? Segment{a, b} : Segment{b, a}; }

struct Terminal {
  int triangle = -1;  // -1 at the boundary of delta
  Segment side;
};

// Dual curve type of a tiling: triangles become trivalent vertices, chains of
// parallelogram-opposite segments become edges. Returns nullopt with a reason tag.
std::optional<CombinatorialType> dual_type(const PathSubdivision& s, int g, TypeDiagnostics& diag) {
  std::map<Segment, std::vector<std::pair<int, int>>> owners;  // piece, side index
  std::vector<int> triangle_id(s.pieces.size(), -1);
  int triangles = 0;
  for (std::size_t p = 0; p < s.pieces.size(); ++p) {
    const auto& c = s.pieces[p].corners;
    if (!s.pieces[p].parallelogram()) triangle_id[p] = triangles++;
    // Parallelogram corners a, b, c, d run a-b-c then d: sides ab, bc, cd, da.
    for (std::size_t i = 0; i < c.size(); ++i) owners[segment(c[i], c[(i + 1) % c.size()])].push_back({static_cast<int>(p), static_cast<int>(i)});
  }

  auto walk = [&](Segment seg, int piece, std::vector<Segment>& chain) -> Terminal {
    for (;;) {
      if (piece < 0) return {-1, seg};
      const auto& pc = s.pieces[static_cast<std::size_t>(piece)];
      if (!pc.parallelogram()) return {triangle_id[static_cast<std::size_t>(piece)], seg};
      int side = -1;
      for (auto [p, i] : owners[seg])
        if (p == piece) side = i;
      int opposite = (side + 2) % 4;
      seg = segment(pc.corners[static_cast<std::size_t>(opposite)], pc.corners[static_cast<std::size_t>((opposite + 1) % 4)]);
      chain.push_back(seg);
      int next = -1;
      for (auto [p, i] : owners[seg])
        if (p != piece) next = p;
      piece = next;
    }
  };

  CombinatorialType t;
  t.graph.vertices.assign(static_cast<std::size_t>(triangles), VertexKind::Finite);
  std::map<Segment, int> edge_of;
  auto outward = [&](int tri, const Segment& side) {
    for (std::size_t p = 0; p < s.pieces.size(); ++p) {
      if (triangle_id[p] != tri) continue;
      LatticePoint third;
      for (auto c : s.pieces[p].corners)
        if (c != side.first && c != side.second) third = c;
      LatticePoint d = side.second - side.first;
      LatticePoint n{d.y, -d.x};
      if (dot(n, third - side.first) > 0) n = -n;
      return primitive_decompose(n).primitive;
    }
    throw Error("dual_type: missing triangle");
  };

  for (const auto& [seg0, own] : owners) {
    if (edge_of.count(seg0)) continue;
    std::vector<Segment> chain{seg0};
    Terminal a = walk(seg0, own[0].first, chain);
    Terminal b = walk(seg0, own.size() > 1 ? own[1].first : -1, chain);
    if (a.triangle < 0 && b.triangle < 0) {
      ++diag.lines;
      return std::nullopt;
    }
    if (a.triangle == b.triangle) return std::nullopt;
    if (a.triangle < 0) std::swap(a, b);
    const std::int64_t w = length_of(seg0.second - seg0.first);
    const int index = t.graph.edge_count();
    for (const auto& sg : chain) edge_of[sg] = index;
    int head = b.triangle;
    if (head < 0) {
      head = t.graph.vertex_count();
      t.graph.vertices.push_back(VertexKind::AtInfinity);
    }
    t.graph.edges.push_back({a.triangle, head, Length::infinite()});
    t.directions.push_back({outward(a.triangle, a.side), w});
  }

  if (genus(t.graph) != g) {
    ++diag.wrong_genus;
    return std::nullopt;
  }
  // Connected: a spanning check over all vertices.
  std::vector<int> parent(t.graph.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]); };
  for (const auto& e : t.graph.edges) parent[static_cast<std::size_t>(find(e.tail))] = find(e.head);
  for (int v = 0; v < t.graph.vertex_count(); ++v)
    if (find(v) != find(0)) {
      ++diag.wrong_genus;
      return std::nullopt;
    }

  const std::size_t steps = s.path.size() - 1;
  std::vector<bool> used(t.graph.edges.size(), false);
  t.marks.resize(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    int e = edge_of.at(segment(s.path[i], s.path[i + 1]));
    if (used[static_cast<std::size_t>(e)]) {
      ++diag.shared_strips;
      return std::nullopt;
    }
    used[static_cast<std::size_t>(e)] = true;
    t.marks[i] = MarkPlacement{-1, e, MarkClass::Simple, Mt::One};
  }
  return t;
}

}  // namespace

std::vector<EnumeratedType> enumerate_types(const LatticePolygon& delta, int g, const MarkLayout& layout,
                                            TypeDiagnostics* diagnostics) {
  if (delta.dimension() < 2) throw Error("enumerate_types: the polygon must have positive area");
  for (int k : layout.per_side)
    if (k != 0) throw Error("enumerate_types: boundary points are not supported");
  TypeDiagnostics local;
  TypeDiagnostics& diag = diagnostics ? *diagnostics : local;
  std::vector<EnumeratedType> out;
  for (const auto& path : lambda_paths(delta, layout.interior)) {
    for (auto& sub : compress_path(delta, path)) {
      ++diag.histories;
      if (auto t = dual_type(sub, g, diag)) out.push_back({std::move(*t), std::move(sub)});
    }
  }
  return out;
}

}  // namespace tropicount
