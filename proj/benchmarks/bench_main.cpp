#include "reeblab/calabi.hpp"
#include "reeblab/ellipsoid.hpp"
#include "reeblab/flow.hpp"
#include "reeblab/inflation.hpp"
#include "reeblab/numerics.hpp"
#include "reeblab/spectrum.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

void BM_SpectrumEnumeration(benchmark::State& state) {
  const auto count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    reeb::spectrum::ActionSpectrum s({1.0, std::sqrt(2.0)}, std::sqrt(2.0));
    benchmark::DoNotOptimize(s.value(count - 1));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * count));
}
BENCHMARK(BM_SpectrumEnumeration)->RangeMultiplier(10)->Range(1000, 1000000);

void BM_AdaptiveQuadrature(benchmark::State& state) {
  const auto f = [](double x) { return std::exp(-400.0 * (x - 0.37) * (x - 0.37)) + std::sqrt(x); };
  for (auto _ : state) benchmark::DoNotOptimize(reeb::quad(f, 0.0, 1.0));
}
BENCHMARK(BM_AdaptiveQuadrature);

void BM_EllipsoidFlow(benchmark::State& state) {
  const reeb::ellipsoid::Ellipsoid e{1.0, std::sqrt(2.0), true};
  const auto field = reeb::ellipsoid::toric_chart_field(e);
  const double duration = static_cast<double>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(reeb::flow::integrate(field, {0.1, 0.2, 0.3}, duration).end_point);
}
BENCHMARK(BM_EllipsoidFlow)->Arg(20)->Arg(200);

void BM_SlabTraversal(benchmark::State& state) {
  const auto profile = reeb::inflation::make_profile(1.0, 0.1, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(reeb::inflation::slab_traversal_time(profile, 0.3, 0.2));
}
BENCHMARK(BM_SlabTraversal);

void BM_CalabiInvariant(benchmark::State& state) {
  const auto model = reeb::calabi::twist_map(reeb::calabi::smoothed_twist());
  const auto f = reeb::calabi::compute_f_beta(model, reeb::calabi::standard_primitive(model));
  for (auto _ : state) benchmark::DoNotOptimize(reeb::calabi::calabi_invariant(f));
}
BENCHMARK(BM_CalabiInvariant)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
