#include <benchmark/benchmark.h>

#include "cvqkd/analysis.hpp"
#include "cvqkd/analytic.hpp"
#include "cvqkd/montecarlo.hpp"

namespace {

using namespace cvqkd;

void BM_Erfc(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(analytic::erfc(x));
    x = x > 6.0 ? -6.0 : x + 0.0137;
  }
}
BENCHMARK(BM_Erfc);

void BM_SmaMixture(benchmark::State& state) {
  double mu = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(analytic::sma_mixture(mu));
    mu = mu > 3.0 ? 0.5 : mu + 0.01;
  }
}
BENCHMARK(BM_SmaMixture);

void BM_Crossover(benchmark::State& state) {
  ProtocolParams p;
  p.distance_km = 30.0;
  const auto grid = analysis::default_mu_e_grid();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        analysis::crossover_threshold(p, {AttackStrategy::kSpda, 0.0, {}}, grid));
  }
}
BENCHMARK(BM_Crossover)->Unit(benchmark::kMillisecond);

void BM_SimulateSession(benchmark::State& state) {
  const auto strategy = static_cast<AttackStrategy>(state.range(0));
  ProtocolParams p;
  p.distance_km = 30.0;
  p.x0 = 0.5;
  const AttackConfig attack{strategy, 3.0, {}};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(montecarlo::simulate_session(p, attack, 1u << 18, seed++));
  }
  state.SetItemsProcessed(state.iterations() * (1 << 18));
  state.SetLabel(std::string(to_string(strategy)));
}
BENCHMARK(BM_SimulateSession)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
