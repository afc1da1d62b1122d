#include "tropicount/duality.hpp"
#include "tropicount/enumerate.hpp"
#include "tropicount/weights.hpp"

#include <benchmark/benchmark.h>

using namespace tropicount;

namespace {

LatticePolygon triangle(int d) { return LatticePolygon::hull({{0, 0}, {d, 0}, {0, d}}); }

void BM_CountComplex(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  auto problem = make_problem(triangle(d), 0, 0);
  for (auto _ : state) benchmark::DoNotOptimize(count_complex(problem).total_complex);
}
BENCHMARK(BM_CountComplex)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_CountReal(benchmark::State& state) {
  auto problem = make_problem(triangle(static_cast<int>(state.range(0))), 0, 0);
  for (auto _ : state) benchmark::DoNotOptimize(count_real(problem).total_real);
}
BENCHMARK(BM_CountReal)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ComplexWeight(benchmark::State& state) {
  auto res = count_complex(make_problem(triangle(4), 0, 0));
  for (auto _ : state)
    for (const auto& c : res.curves) benchmark::DoNotOptimize(complex_weight(c.curve).total);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * res.curves.size()));
}
BENCHMARK(BM_ComplexWeight)->Unit(benchmark::kMillisecond);

void BM_StarDeformation(benchmark::State& state) {
  std::vector<WeightedDirection> ends = {{{-1, 0}, 1}, {{-1, 0}, 1}, {{-1, 0}, 1}, {{0, -1}, 1}, {{3, 1}, 1}};
  WeightOptions opts;
  for (auto _ : state) benchmark::DoNotOptimize(deform_star(RationalPoint(Rational(0), Rational(0)), ends, opts).curves.size());
}
BENCHMARK(BM_StarDeformation)->Unit(benchmark::kMicrosecond);

void BM_Tropicalize(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  ValuatedPolynomial p;
  for (int i = 0; i <= d; ++i)
    for (int j = 0; i + j <= d; ++j) p.valuation[{i, j}] = Rational((i * i + j * j + i * j) * 3 % 11 + i * j);
  for (auto _ : state) benchmark::DoNotOptimize(tropicalize(p).subdivision.cells.size());
}
BENCHMARK(BM_Tropicalize)->DenseRange(2, 6, 2)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
