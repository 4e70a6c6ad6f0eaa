#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "transineq/funcineq/beta.hpp"
#include "transineq/funcineq/beta_estimate.hpp"
#include "transineq/funcineq/checks.hpp"
#include "transineq/ot/discrete_ot.hpp"
#include "transineq/ot/quantile_ot.hpp"

using namespace transineq;

namespace {

const PotentialMeasure& quartic() {
  static const PotentialMeasure m = normalize(power_potential(1.0, 4.0));
  return m;
}

const PotentialMeasure& gaussian() {
  static const PotentialMeasure m = normalize(power_potential(0.5, 2.0));
  return m;
}

void BM_Normalize(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(normalize(power_potential(1.0, 4.0)).log_Z());
}
BENCHMARK(BM_Normalize)->Unit(benchmark::kMillisecond);

void BM_QuantileW2(benchmark::State& st) {
  const auto a = density_source(quartic().line_ptr());
  const auto b = gaussian_source();
  for (auto _ : st) benchmark::DoNotOptimize(w_quantile_1d(*a, *b, CostFn::power(2)).value);
}
BENCHMARK(BM_QuantileW2)->Unit(benchmark::kMillisecond);

void BM_DiscreteOt(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto a = discretize(quartic(), n, GridScheme::kEqualMass);
  const auto b = discretize(gaussian(), n, GridScheme::kEqualMass);
  for (auto _ : st) benchmark::DoNotOptimize(discrete_ot(a, b, CostFn::power(2)).total_cost);
  st.SetComplexityN(n);
}
BENCHMARK(BM_DiscreteOt)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond)->Complexity();

void BM_TransportMap(benchmark::State& st) {
  const auto map = TransportMap::build_1d(quartic());
  double x = -3.0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(map.y(x));
    x = x > 3.0 ? -3.0 : x + 0.01;
  }
}
BENCHMARK(BM_TransportMap);

void BM_BetaFromMoments(benchmark::State& st) {
  std::vector<double> rs;
  for (int k = 0; k <= 12; ++k) rs.push_back(std::pow(10.0, -3.0 + 0.25 * k));
  for (auto _ : st) benchmark::DoNotOptimize(beta_from_moments(quartic(), rs).values().front());
}
BENCHMARK(BM_BetaFromMoments)->Unit(benchmark::kMillisecond);

void BM_EstimateBeta(benchmark::State& st) {
  const auto g = discretize(gaussian(), static_cast<int>(st.range(0)), GridScheme::kEqualMass);
  for (auto _ : st) benchmark::DoNotOptimize(estimate_beta(g, 0.01, 8).value);
}
BENCHMARK(BM_EstimateBeta)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_WlsiTilts(benchmark::State& st) {
  const auto fam = instantiate(gaussian(), make_family(gaussian(), FamilyTag::kExpTilts));
  for (auto _ : st) benchmark::DoNotOptimize(check_wlsi(gaussian(), nullptr, fam).summary().C_est);
}
BENCHMARK(BM_WlsiTilts)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
