#include <benchmark/benchmark.h>

#include <vector>

#include "ossb/bessel.hpp"
#include "ossb/hom.hpp"
#include "ossb/oracle.hpp"
#include "ossb/photon.hpp"
#include "ossb/sideband.hpp"

namespace {

void BM_BesselJ(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0)) / 4.0;
  for (auto _ : state) {
    for (int n = 0; n <= 20; ++n) benchmark::DoNotOptimize(ossb::bessel_j(n, x));
  }
}
BENCHMARK(BM_BesselJ)->Arg(2)->Arg(40)->Arg(120);

void BM_OssbCompose(benchmark::State& state) {
  const ossb::ModulatorConfig config(static_cast<double>(state.range(0)) / 100.0, 25.0,
                                     ossb::paper_bias_preset());
  for (auto _ : state) benchmark::DoNotOptimize(ossb::ossb_compose(config));
}
BENCHMARK(BM_OssbCompose)->Arg(54)->Arg(184)->Arg(1000);

void BM_OracleCoincidence(benchmark::State& state) {
  const auto s = ossb::from_hom_sigma(0.0, 8.0);
  const auto i = ossb::from_hom_sigma(5.0, 8.0);
  for (auto _ : state) benchmark::DoNotOptimize(ossb::oracle_coincidence(s, i, 12.0));
}
BENCHMARK(BM_OracleCoincidence);

void BM_FitVisibility(benchmark::State& state) {
  std::vector<double> delays;
  for (int k = -40; k <= 40; ++k) delays.push_back(5.0 * k);
  const auto curve = ossb::dip_curve(ossb::HomParams{8.0, 8.0, 5.0, 70.0}, delays, true);
  for (auto _ : state) benchmark::DoNotOptimize(ossb::fit_visibility(curve));
}
BENCHMARK(BM_FitVisibility);

}  // namespace
BENCHMARK_MAIN();
