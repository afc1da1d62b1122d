#include "tropicount/enumerate.hpp"

#include "tropicount/error.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

namespace tropicount {

unsigned worker_count() {
  if (const char* env = std::getenv("TROPICOUNT_THREADS")) {
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (end != env && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Runs f(i) for i < n on a small pool; rethrows the lowest-index failure.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
  std::vector<std::exception_ptr> errors(n);
  auto guarded = [&](std::size_t i) {
    try {
      f(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) guarded(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) guarded(i);
      });
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct Slot {
  std::optional<EnumeratedCurve> curve;
  bool degenerate = false;
};

EnumerationResult run(const EnumerationProblem& p, bool real) {
  if (real)
    for (Reality t : p.tags)
      if (t != Reality::Real) throw Error("count_real: configurations with imaginary points are not supported");
  EnumerationResult result;
  auto types = enumerate_types(p.polygon, p.genus, p.layout, &result.diagnostics.generation);
  result.diagnostics.types = types.size();

  for (int attempt = 0; attempt <= p.retries; ++attempt) {
    const std::uint64_t seed = p.seed + static_cast<std::uint64_t>(attempt);
    Configuration cfg = stretched_config(p.polygon, p.layout, seed);
    std::vector<Slot> slots(types.size());
    parallel_for(types.size(), [&](std::size_t i) {
      auto res = solve_type(types[i].type, cfg);
      if (res.status == SolveStatus::Degenerate) {
        slots[i].degenerate = true;
        return;
      }
      if (res.status != SolveStatus::Solved) return;
      MarkedCurve& m = *res.curve;
      if (!validate_ppt(m.curve).ok() || !marks_exhaust_preimages(m, cfg)) {
        slots[i].degenerate = true;
        return;
      }
      EnumeratedCurve ec;
      ec.type_index = i;
      ec.weight = complex_weight(m, p.weights);
      if (real) ec.real = real_weight(with_identity_involution(m), p.weights);
      ec.canonical = canonical_form(m);
      ec.path_multiplicity = types[i].subdivision.multiplicity;
      ec.path_real_sign = types[i].subdivision.real_sign;
      ec.curve = std::move(m);
      slots[i].curve = std::move(ec);
    });
    if (std::any_of(slots.begin(), slots.end(), [](const Slot& s) { return s.degenerate; })) {
      ++result.diagnostics.reseeds;
      continue;
    }

    result.config = std::move(cfg);
    result.diagnostics.seed_used = seed;
    result.total_complex = 0;
    if (real) result.total_real = Rational(0);
    for (auto& s : slots) {
      if (!s.curve) {
        ++result.diagnostics.no_solution;
        continue;
      }
      ++result.diagnostics.solved;
      result.curves.push_back(std::move(*s.curve));
    }
    std::stable_sort(result.curves.begin(), result.curves.end(),
                     [](const EnumeratedCurve& a, const EnumeratedCurve& b) { return a.canonical < b.canonical; });
    auto last = std::unique(result.curves.begin(), result.curves.end(),
                            [](const EnumeratedCurve& a, const EnumeratedCurve& b) { return a.canonical == b.canonical; });
    result.diagnostics.duplicates = static_cast<std::size_t>(result.curves.end() - last);
    result.curves.erase(last, result.curves.end());
    for (const auto& c : result.curves) {
      result.total_complex += c.weight.total;
      if (real) *result.total_real += c.real->total;
    }
    return result;
  }
  throw GenericityError("no generic stretched configuration after " + std::to_string(p.retries + 1) + " seeds");
}

}  // namespace

EnumerationProblem make_problem(const LatticePolygon& delta, int g, std::uint64_t seed) {
  EnumerationProblem p;
  p.polygon = delta;
  p.genus = g;
  p.layout = default_layout(delta, g);
  p.seed = seed;
  return p;
}

EnumerationResult count_complex(const EnumerationProblem& p) { return run(p, false); }

EnumerationResult count_real(const EnumerationProblem& p) { return run(p, true); }

InvarianceReport invariance_check(const LatticePolygon& delta, int g, const std::vector<std::uint64_t>& seeds, bool real) {
  InvarianceReport rep;
  if (seeds.size() < 2) return rep;
  for (auto seed : seeds) {
    auto r = real ? count_real(make_problem(delta, g, seed)) : count_complex(make_problem(delta, g, seed));
    rep.complex_totals.push_back(r.total_complex);
    if (r.total_real) rep.real_totals.push_back(*r.total_real);
  }
  auto same = [](const std::vector<Rational>& v) { return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end(); };
  rep.ok = same(rep.complex_totals) && same(rep.real_totals);
  return rep;
}

KConfiguration make_kconfiguration(const MarkedCurve& m, const Configuration& cfg, std::uint64_t seed) {
  KConfiguration k;
  k.polygon = cfg.polygon;
  std::mt19937_64 rng(seed);
  auto coefficient = [&] {
    std::int64_t n = static_cast<std::int64_t>(rng() % 199) - 99;
    return ComplexRational{Rational(n == 0 ? 100 : n, 1 + static_cast<std::int64_t>(rng() % 97)), Rational(0)};
  };
  for (std::size_t i = 0; i < cfg.points.size(); ++i) {
    KPoint p;
    p.valuation = cfg.points[i];
    p.initial = {coefficient(), coefficient()};
    p.conjugate = static_cast<int>(i);
    k.points.push_back(std::move(p));
    if (cfg.points[i].on_boundary() && i < m.marks.size()) k.psi[static_cast<int>(i)] = static_cast<int>(i);
  }
  return k;
}

}  // namespace tropicount
