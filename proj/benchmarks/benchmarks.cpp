#include <benchmark/benchmark.h>

#include "kdvbbm/dynamics.hpp"
#include "kdvbbm/estimates.hpp"
#include "kdvbbm/illposedness.hpp"
#include "kdvbbm/random_fields.hpp"
#include "kdvbbm/spectral.hpp"

using namespace kdvbbm;

namespace {

constexpr double kPi = 3.14159265358979323846;

Spectrum sample(std::size_t n) {
  const PeriodicGrid grid(64.0 * kPi, n);
  return random_gaussian_spectrum(grid, 2.0, grid.max_frequency(), 1);
}

void BM_TransformRoundTrip(benchmark::State& state) {
  const Spectrum s = sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    Spectrum back = transform(inverse(s));
    benchmark::DoNotOptimize(back.coeffs.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TransformRoundTrip)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_Nonlinearity(benchmark::State& state) {
  const Spectrum s = sample(static_cast<std::size_t>(state.range(0)));
  const auto dealias = static_cast<Dealias>(state.range(1));
  const NonlinearOperator op(s.grid, default_params(), dealias);
  for (auto _ : state) {
    Spectrum f = op.F(s);
    benchmark::DoNotOptimize(f.coeffs.data());
  }
  state.SetLabel(to_string(dealias));
}
BENCHMARK(BM_Nonlinearity)
    ->ArgsProduct({{512, 2048, 8192},
                   {static_cast<long>(Dealias::none), static_cast<long>(Dealias::two_thirds),
                    static_cast<long>(Dealias::pad_double)}});

void BM_IntegratingFactorStep(benchmark::State& state) {
  const Spectrum s = sample(static_cast<std::size_t>(state.range(0)));
  const ModelParams params = default_params();
  const NonlinearOperator op(s.grid, params);
  const IntegratingFactorRK4 stepper(s.grid, params, 1e-3);
  const auto rhs = [&op](const Spectrum& u) { return op.F(u); };
  Spectrum u = s;
  for (auto _ : state) {
    u = stepper.step(u, rhs);
    benchmark::DoNotOptimize(u.coeffs.data());
  }
}
BENCHMARK(BM_IntegratingFactorStep)->Arg(512)->Arg(2048)->Arg(8192);

void BM_SecondIterateQuadrature(benchmark::State& state) {
  const ModelParams params = default_params();
  const double alpha = alpha_for_time(params, 0.5);
  const BandData band{static_cast<double>(state.range(0)), alpha};
  for (auto _ : state) {
    benchmark::DoNotOptimize(second_iterate_quadrature(params, band, 0.5, 0.5).norm);
  }
}
BENCHMARK(BM_SecondIterateQuadrature)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_EstimateRatio(benchmark::State& state) {
  const auto id = static_cast<Estimate>(state.range(0));
  const PeriodicGrid grid(16.0 * kPi, 1024);
  std::vector<Spectrum> in;
  for (int j = 0; j < arity(id); ++j) {
    in.push_back(random_gaussian_spectrum(grid, 2.0, grid.max_frequency(), 10 + j));
  }
  const ModelParams params = default_params();
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_ratio(id, 1.0, in, params));
  }
  state.SetLabel(to_string(id));
}
BENCHMARK(BM_EstimateRatio)->DenseRange(0, 6);

}  // namespace
BENCHMARK_MAIN();
