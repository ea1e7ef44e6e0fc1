#include <benchmark/benchmark.h>

#include "fanodeg/degeneration.hpp"
#include "fanodeg/mutation.hpp"
#include "fanodeg/scattering.hpp"

using namespace fanodeg;
using lattice::Point;
using lattice::Polygon;

namespace {

algebra::Series lattice_series(const char* text) { return algebra::parse_series(text, algebra::ParseOptions{}); }

void BM_SeriesMultiply(benchmark::State& state) {
  auto k = state.range(0);
  auto a = lattice_series("1 + a*t*z^(1,0) + b*t*z^(0,1) + t^2*z^(1,1)").truncated(k);
  auto b = lattice_series("1 - t*z^(-1,0) + c*t*z^(0,-1)").truncated(k);
  for (auto _ : state) benchmark::DoNotOptimize((a * b).pow(k));
}
BENCHMARK(BM_SeriesMultiply)->DenseRange(2, 6, 2);

void BM_TwoLineCompletion(benchmark::State& state) {
  auto k = state.range(0);
  scatter::ScatteringDiagram d;
  d.walls = {scatter::make_line({1, 0}, lattice_series("1 + t*z^(1,0)")),
             scatter::make_line({0, 1}, lattice_series("1 + t*z^(0,1)"))};
  for (auto _ : state) benchmark::DoNotOptimize(scatter::scatter_complete(d, k));
}
BENCHMARK(BM_TwoLineCompletion)->DenseRange(2, 6, 2);

void BM_HilbertBasis(benchmark::State& state) {
  Polygon q = Polygon::hull(std::vector<Point>{{-1, -1}, {5, -1}, {-1, Rat(1, 2)}});
  lattice::Cone3 c(q);
  for (auto _ : state) benchmark::DoNotOptimize(lattice::cone_generators_hilbert(c, c.hilbert_height_bound()));
}
BENCHMARK(BM_HilbertBasis);

void BM_MutationGraph(benchmark::State& state) {
  Polygon p = Polygon::hull(std::vector<Point>{{-3, -1}, {3, -1}, {0, 1}});
  for (auto _ : state) benchmark::DoNotOptimize(mutation::mutation_graph(p, state.range(0), 20));
}
BENCHMARK(BM_MutationGraph)->Arg(8)->Arg(32);

void BM_NormalForm(benchmark::State& state) {
  Polygon p = Polygon::hull(std::vector<Point>{{1, 0}, {3, 2}, {-1, 3}, {-4, -1}, {0, -2}});
  for (auto _ : state) benchmark::DoNotOptimize(lattice::unimodular_normal_form(p));
}
BENCHMARK(BM_NormalForm);

void BM_IltenFamily(benchmark::State& state) {
  Polygon q = Polygon::hull(std::vector<Point>{{1, 0}, {0, 1}, {-1, -1}});
  for (auto _ : state) benchmark::DoNotOptimize(degen::ilten_ideal(q, {1, 0}));
}
BENCHMARK(BM_IltenFamily);

}  // namespace

BENCHMARK_MAIN();
