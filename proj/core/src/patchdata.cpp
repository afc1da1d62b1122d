#include "tropicount/patchdata.hpp"

#include "tropicount/error.hpp"

#include <algorithm>
#include <set>

namespace tropicount {

std::int64_t MultiplicityVector::at(int i) const {
  auto it = entries.find(i);
  return it == entries.end() ? 0 : it->second;
}

void MultiplicityVector::add(int i, std::int64_t count) {
  if (i < 1) throw Error("multiplicity index must be positive");
  if ((entries[i] += count) == 0) entries.erase(i);
}

bool operator==(const MultiplicityVector& a, const MultiplicityVector& b) {
  auto nonzero = [](const MultiplicityVector& v) {
    std::map<int, std::int64_t> out;
    for (auto [i, x] : v.entries)
      if (x != 0) out[i] = x;
    return out;
  };
  return nonzero(a) == nonzero(b);
}

Norms norms(const MultiplicityVector& a) {
  Norms n;
  for (auto [i, x] : a.entries) {
    n.zero = checked_add(n.zero, x);
    n.one = checked_add(n.one, checked_mul(i, x));
  }
  return n;
}

bool dominates(const MultiplicityVector& a, const MultiplicityVector& b) {
  for (auto [i, x] : b.entries)
    if (a.at(i) < x) return false;
  return true;
}

BoundaryVectors boundary_vectors(const PPTCurve& c, const LatticePolygon& delta) {
  BoundaryVectors out;
  const int sides = static_cast<int>(delta.sides().size());
  for (int s = 0; s < sides; ++s) out[s];
  for (int e : c.ends()) {
    auto loc = compactify_end(c, e, delta);
    if (loc.kind != BoundaryLocation::Kind::Side)
      throw HypothesisError("boundary", "end " + std::to_string(e) + " is not orthogonal to a side");
    out[loc.index].add(static_cast<int>(c.weight(e)));
  }
  return out;
}

namespace {

std::pair<int, int> mt_components(Mt mt) {
  switch (mt) {
    case Mt::One: return {1, 0};
    case Mt::First: return {1, 0};
    case Mt::Second: return {0, 1};
    case Mt::Both: return {1, 1};
  }
  return {0, 0};
}

int end_of_vertex(const PPTCurve& c, int u) {
  for (int e : c.ends())
    if (c.graph.edges[static_cast<std::size_t>(e)].head == u) return e;
  return -1;
}

}  // namespace

Multiplicities multiplicity_function(const MarkedCurve& m, const KConfiguration& k) {
  const PPTCurve& c = m.curve;
  struct Over {
    std::vector<int> simple, twice;
  };
  std::map<RationalPoint, Over> over;
  for (std::size_t i = 0; i < m.marks.size(); ++i) {
    if (m.mark_at_infinity(i)) continue;
    auto& slot = over[image(c, m.marks[i].point)];
    (m.marks[i].cls == MarkClass::Simple ? slot.simple : slot.twice).push_back(static_cast<int>(i));
  }
  std::map<RationalPoint, std::vector<int>> preimages;
  for (std::size_t p = 0; p < k.points.size(); ++p)
    if (!k.points[p].valuation.on_boundary()) preimages[k.points[p].valuation.point].push_back(static_cast<int>(p));
  for (const auto& [x, pts] : preimages)
    if (!over.count(x)) throw HypothesisError("A1", "point " + std::to_string(pts.front()) + " lies over no mark");

  Multiplicities mu;
  for (const auto& [x, slot] : over) {
    if (!slot.simple.empty() && !slot.twice.empty())
      throw HypothesisError("A2", "simple and double marks share the image of mark " + std::to_string(slot.simple.front()));
    auto it = preimages.find(x);
    const std::size_t count = it == preimages.end() ? 0 : it->second.size();
    if (!slot.simple.empty()) {
      if (count != 1) throw HypothesisError("A1", "image of mark " + std::to_string(slot.simple.front()) + " has " + std::to_string(count) + " preimages");
      mu[it->second.front()] = static_cast<std::int64_t>(slot.simple.size());
    } else {
      if (count != 2) throw HypothesisError("A2", "image of mark " + std::to_string(slot.twice.front()) + " has " + std::to_string(count) + " preimages");
      std::int64_t m1 = 0, m2 = 0;
      for (int i : slot.twice) {
        auto [a, b] = mt_components(m.marks[static_cast<std::size_t>(i)].mt);
        m1 += a, m2 += b;
      }
      mu[it->second[0]] = m1;
      mu[it->second[1]] = m2;
    }
  }

  const LatticePolygon delta = k.polygon.empty() ? newton_polygon(c) : k.polygon;
  std::set<int> hit;
  for (std::size_t p = 0; p < k.points.size(); ++p) {
    const auto& pt = k.points[p].valuation;
    if (!pt.on_boundary()) continue;
    auto it = k.psi.find(static_cast<int>(p));
    if (it == k.psi.end()) throw HypothesisError("A3", "boundary point " + std::to_string(p) + " has no mark");
    const int mark = it->second;
    if (mark < 0 || static_cast<std::size_t>(mark) >= m.marks.size() || !m.mark_at_infinity(static_cast<std::size_t>(mark)))
      throw HypothesisError("A3", "boundary point " + std::to_string(p) + " is not sent to a mark at infinity");
    if (!hit.insert(mark).second) throw HypothesisError("A3", "mark " + std::to_string(mark) + " is hit twice");
    int e = end_of_vertex(c, normalize(c, m.marks[static_cast<std::size_t>(mark)].point).vertex);
    auto loc = compactify_end(c, e, delta);
    if (loc.kind != BoundaryLocation::Kind::Side || loc.index != *pt.side || loc.parameter != pt.parameter)
      throw HypothesisError("A3", "boundary point " + std::to_string(p) + " is not where mark " + std::to_string(mark) + " closes up");
  }
  if (k.psi.size() != hit.size()) throw HypothesisError("A3", "psi names interior points");
  for (std::size_t i = 0; i < m.marks.size(); ++i)
    if (m.mark_at_infinity(i) && !hit.count(static_cast<int>(i)))
      throw HypothesisError("A3", "mark " + std::to_string(i) + " at infinity has no boundary point");
  return mu;
}

std::int64_t boundary_point_count(const KConfiguration& k) {
  return std::count_if(k.points.begin(), k.points.end(), [](const KPoint& p) { return p.valuation.on_boundary(); });
}

bool check_euler(const MarkedCurve& m, const KConfiguration& k, int g) {
  std::int64_t sum = 0;
  for (auto [p, mu] : multiplicity_function(m, k)) sum += mu;
  return sum + boundary_point_count(k) - static_cast<std::int64_t>(m.curve.ends().size()) == g - 1;
}

PatchContext make_context(const MarkedCurve& m, const KConfiguration& k) {
  PatchContext ctx;
  ctx.curve = m;
  ctx.config = k;
  ctx.delta = k.polygon.empty() ? newton_polygon(m.curve) : k.polygon;
  ctx.mu = multiplicity_function(m, k);
  ctx.beta = boundary_vectors(m.curve, ctx.delta);
  ctx.genus = genus(m.curve.graph);
  return ctx;
}

CompatibleTuple full_tuple(const PatchContext& ctx) {
  CompatibleTuple t;
  t.part = ctx.delta;
  t.genus = ctx.genus;
  for (std::size_t p = 0; p < ctx.config.points.size(); ++p) t.points.push_back(static_cast<int>(p));
  t.mu = ctx.mu;
  t.beta = ctx.beta;
  return t;
}

ValidationReport check_compatible(const CompatibleTuple& t, const PatchContext& ctx) {
  if (!is_minkowski_summand(t.part, ctx.delta)) throw Error("polygon is not a Minkowski summand of the Newton polygon");
  ValidationReport rep;
  const auto sides = ctx.delta.sides();
  const auto& pts = ctx.config.points;
  std::int64_t mu_sum = 0, boundary = 0;
  for (int p : t.points) {
    if (p < 0 || static_cast<std::size_t>(p) >= pts.size()) {
      rep.add("subset", "point " + std::to_string(p), "index out of range");
      continue;
    }
    if (pts[static_cast<std::size_t>(p)].valuation.on_boundary()) {
      ++boundary;
      continue;
    }
    auto it = t.mu.find(p);
    auto full = ctx.mu.find(p);
    if (it == t.mu.end() || it->second <= 0) {
      rep.add("subset", "point " + std::to_string(p), "no positive multiplicity");
      continue;
    }
    if (full == ctx.mu.end() || it->second > full->second) rep.add("subset", "point " + std::to_string(p), "multiplicity exceeds mu");
    mu_sum += it->second;
  }
  std::int64_t beta_zero = 0;
  for (std::size_t s = 0; s < sides.size(); ++s) {
    const std::string where = "side " + std::to_string(s);
    auto it = t.beta.find(static_cast<int>(s));
    const MultiplicityVector b = it == t.beta.end() ? MultiplicityVector{} : it->second;
    auto full = ctx.beta.find(static_cast<int>(s));
    if (full == ctx.beta.end() || !dominates(full->second, b)) rep.add("subset", where, "tangency vector exceeds the full one");
    Norms n = norms(b);
    beta_zero += n.zero;
    if (n.one != face_length(t.part, sides[s].normal)) rep.add("degree", where, "first norm differs from the side degree");
    std::map<int, std::int64_t> needed;
    for (int p : t.points) {
      if (p < 0 || static_cast<std::size_t>(p) >= pts.size()) continue;
      const auto& v = pts[static_cast<std::size_t>(p)].valuation;
      if (!v.on_boundary() || *v.side != static_cast<int>(s)) continue;
      auto psi = ctx.config.psi.find(p);
      if (psi == ctx.config.psi.end()) continue;
      const auto& c = ctx.curve.curve;
      int e = end_of_vertex(c, normalize(c, ctx.curve.marks.at(static_cast<std::size_t>(psi->second)).point).vertex);
      if (e >= 0) ++needed[static_cast<int>(c.weight(e))];
    }
    for (auto [i, count] : needed)
      if (b.at(i) < count) rep.add("tangency", where, "fewer weight-" + std::to_string(i) + " branches than fixed boundary points");
  }
  if (t.genus < 0 || static_cast<std::size_t>(t.genus) > lattice_points(t.part).interior.size())
    rep.add("genus", "tuple", "genus exceeds the interior point count");
  if (mu_sum + boundary - beta_zero != t.genus - 1) rep.add("euler", "tuple", "Euler-type relation fails");
  return rep;
}

SurfaceDescriptor describe_surface(const LatticePolygon& delta) {
  SurfaceDescriptor d;
  if (delta.dimension() < 2) return d;
  const auto sides = delta.sides();
  const std::size_t n = sides.size();
  bool smooth = true;
  for (std::size_t i = 0; i < n; ++i)
    smooth = smooth && std::llabs(cross(sides[i].normal, sides[(i + 1) % n].normal)) == 1;
  if (!smooth) return d;
  for (std::size_t i = 0; i < n; ++i) {
    LatticePoint sum = sides[(i + n - 1) % n].normal + sides[(i + 1) % n].normal;
    LatticePoint nn = sides[i].normal;
    // sum = a * n for a smooth fan
    std::int64_t a = nn.x != 0 ? sum.x / nn.x : sum.y / nn.y;
    d.divisor_squares.push_back(static_cast<int>(-a));
  }
  auto cyclic_match = [&](std::vector<int> pattern) {
    if (pattern.size() != n) return false;
    for (int flip = 0; flip < 2; ++flip) {
      for (std::size_t r = 0; r < n; ++r) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) ok = d.divisor_squares[i] == pattern[(i + r) % n];
        if (ok) return true;
      }
      std::reverse(pattern.begin(), pattern.end());
    }
    return false;
  };
  if (cyclic_match({1, 1, 1})) {
    d.kind = SurfaceKind::P2;
  } else if (cyclic_match({0, 0, 0, 0})) {
    d.kind = SurfaceKind::P1xP1;
  } else if (cyclic_match({1, 0, -1, 0})) {
    d.kind = SurfaceKind::P2Blown, d.blowups = 1;
  } else if (cyclic_match({0, -1, -1, -1, 0})) {
    d.kind = SurfaceKind::P2Blown, d.blowups = 2;
  } else if (cyclic_match({-1, -1, -1, -1, -1, -1})) {
    d.kind = SurfaceKind::P2Blown, d.blowups = 3;
  }
  return d;
}

A5Verdict check_A5_criteria(const SurfaceDescriptor& surface, const KConfiguration& k, const Multiplicities& mu) {
  std::int64_t multiple = 0;
  for (auto [p, m] : mu)
    if (m > 1) ++multiple;
  if (multiple == 0) return A5Verdict::Holds;
  if (surface.kind == SurfaceKind::Other) return A5Verdict::Unknown;

  std::set<int> divisors;
  for (const auto& p : k.points)
    if (p.valuation.on_boundary()) divisors.insert(*p.valuation.side);
  if (divisors.size() > 1) return A5Verdict::Unknown;
  auto bound_for = [&](int side) -> std::int64_t {
    switch (surface.kind) {
      case SurfaceKind::P2: return 4;
      case SurfaceKind::P1xP1: return 3;
      case SurfaceKind::P2Blown:
        return 5 - surface.divisor_squares.at(static_cast<std::size_t>(side)) - surface.blowups;
      case SurfaceKind::Other: break;
    }
    return -1;
  };
  std::int64_t bound = -1;
  if (divisors.empty()) {
    // Any divisor contains the empty set; take the most permissive one.
    for (std::size_t s = 0; s < surface.divisor_squares.size(); ++s) bound = std::max(bound, bound_for(static_cast<int>(s)));
  } else {
    bound = bound_for(*divisors.begin());
  }
  return multiple <= bound ? A5Verdict::Holds : A5Verdict::Unknown;
}

}  // namespace tropicount
