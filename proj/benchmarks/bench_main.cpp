#include <benchmark/benchmark.h>

#include "bessel_lab/bessel_functions.hpp"
#include "bessel_lab/combinatorics.hpp"
#include "bessel_lab/derham.hpp"
#include "bessel_lab/exact_matrix.hpp"
#include "bessel_lab/moments.hpp"
#include "bessel_lab/periods.hpp"
#include "bessel_lab/verifier.hpp"

using namespace bessel_lab;

namespace {

// bernoulli() memoises, so this measures the cached lookup after the first pass.
void BM_Bernoulli(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bernoulli(n));
}
BENCHMARK(BM_Bernoulli)->Arg(50)->Arg(200);

// The solution cache makes repeats cheap; this is the cached path plus the
// matrix assembly.
void BM_SmidMatrix(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(smid_matrix(k));
}
BENCHMARK(BM_SmidMatrix)->Arg(11)->Arg(16)->Arg(24);

void BM_SolveAtInfinity(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_at_infinity(k, k_prime(k), k_prime(k)));
}
BENCHMARK(BM_SolveAtInfinity)->Arg(9)->Arg(15)->Arg(21);

void BM_DetExact(benchmark::State& state) {
  const ExactMatrix s = smid_matrix(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(det_exact(s));
}
BENCHMARK(BM_DetExact)->Arg(13)->Arg(23);

void BM_BesselI0K0(benchmark::State& state) {
  const int digits = static_cast<int>(state.range(0));
  const mpfr_prec_t prec = bits_for_digits(digits);
  const BigReal t(std::string("2.75"), prec);
  for (auto _ : state) benchmark::DoNotOptimize(bessel_i0_k0(t, prec));
}
BENCHMARK(BM_BesselI0K0)->Arg(50)->Arg(100)->Arg(200);

void BM_MomentBatch(benchmark::State& state) {
  const int k = 7;
  const int digits = static_cast<int>(state.range(0));
  std::vector<MomentIntegrand> batch;
  for (int i = 0; 2 * i < k; ++i)
    for (int c = 1; c <= 5; c += 2) batch.push_back(ikm_integrand(k, i, c));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_moments(batch, digits));
}
BENCHMARK(BM_MomentBatch)->Arg(30)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_VerifyQuadratic(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_quadratic(k, 50));
}
BENCHMARK(BM_VerifyQuadratic)->Arg(5)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
