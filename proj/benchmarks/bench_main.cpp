#include <gshift/lab.hpp>
#include <gshift/series.hpp>
#include <gshift/shift.hpp>

#include <benchmark/benchmark.h>

using namespace gshift;

namespace {

Example31Params half() { return {1, 1, parse_rational("1/2")}; }

void BM_Classify(benchmark::State& state) {
  const auto g = example31_graph();
  const auto w = example31_weights(half());
  for (auto _ : state) benchmark::DoNotOptimize(classify(g, w, 3, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Classify)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_WspVerdict(benchmark::State& state) {
  const auto g = example31_graph();
  const Example31Params p{1, 1, Rational(state.range(0)) / 1000};
  const auto w = example31_weights(p);
  for (auto _ : state) benchmark::DoNotOptimize(wsp_verdict(g, w));
}
BENCHMARK(BM_WspVerdict)->Arg(500)->Arg(647)->Arg(900)->Unit(benchmark::kMillisecond);

void BM_Crossover(benchmark::State& state) {
  const auto tol = parse_rational("1e-10");
  for (auto _ : state)
    benchmark::DoNotOptimize(epsilon1_crossover(1, 1, parse_rational("1/2"), parse_rational("9/10"), tol));
}
BENCHMARK(BM_Crossover)->Unit(benchmark::kMillisecond);

template <class Scalar>
void BM_WanderingClosure(benchmark::State& state) {
  const ShiftModel<Scalar> m(example31_graph(), example31_weights(half()));
  for (auto _ : state) benchmark::DoNotOptimize(wandering_closure(m, static_cast<std::size_t>(state.range(0))).dim);
}
BENCHMARK(BM_WanderingClosure<QuadraticNumber>)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WanderingClosure<double>)->Arg(64)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Cyclicity(benchmark::State& state) {
  const ExactModel m(example31_graph(), example31_weights(half()));
  const auto root = VertexId::root();
  for (auto _ : state) benchmark::DoNotOptimize(cyclicity_check(m, root, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Cyclicity)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_BinaryTreeAnalyticity(benchmark::State& state) {
  const OneCircuitGraph g(TreeGenerator::kary(2), 2);
  const auto w = WeightSystem::constant(parse_rational("1/3"));
  for (auto _ : state) benchmark::DoNotOptimize(analyticity(g, w).overall);
}
BENCHMARK(BM_BinaryTreeAnalyticity)->Unit(benchmark::kMillisecond);

void BM_RemarkSearch(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(remark32_search(4, 10000, 1).feasible);
}
BENCHMARK(BM_RemarkSearch)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
