#include <benchmark/benchmark.h>

#include "flda/discriminant.hpp"
#include "flda/kernels.hpp"
#include "flda/model.hpp"
#include "flda/rmt.hpp"
#include "flda/rng.hpp"

namespace {

flda::Mat random_symmetric(int n, std::uint64_t seed) {
  flda::Rng rng(seed);
  const flda::Mat a = rng.normal_mat(n, n);
  return flda::Mat(0.5 * (a + a.transpose()));
}

void BM_SymEig(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const flda::Mat a = random_symmetric(n, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(flda::sym_eig(a));
  }
}
BENCHMARK(BM_SymEig)->Arg(50)->Arg(200)->Arg(500);

void BM_PowerTrial(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const auto problem = flda::random_problem(dim, 5, 1.0, 2);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const auto data = flda::sample_dataset(problem, 2 * dim / 5, ++seed);
    const auto est = flda::estimate_scatters(data);
    benchmark::DoNotOptimize(flda::delta_factors(problem, est));
  }
}
BENCHMARK(BM_PowerTrial)->Arg(50)->Arg(100);

void BM_MpCdf(benchmark::State& state) {
  const flda::MpLaw law(0.5);
  flda::mp_cdf(1.0, law);  // warm the cache outside the loop
  double x = law.lambda_minus();
  for (auto _ : state) {
    x += 1e-4;
    if (x >= law.lambda_plus()) {
      x = law.lambda_minus();
    }
    benchmark::DoNotOptimize(flda::mp_cdf(x, law));
  }
}
BENCHMARK(BM_MpCdf);

void BM_KsDistance(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const flda::MpLaw law(0.5);
  const auto sample = flda::wishart_spectrum(dim, 2 * dim, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(flda::ks_distance(sample, law));
  }
}
BENCHMARK(BM_KsDistance)->Arg(200)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
