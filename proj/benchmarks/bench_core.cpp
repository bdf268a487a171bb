#include <benchmark/benchmark.h>

#include "scatdesign/forward.hpp"
#include "scatdesign/sht.hpp"
#include "scatdesign/synthesis.hpp"

using namespace scatdesign;

static void BM_BesselArray(benchmark::State& state) {
  const int lmax = static_cast<int>(state.range(0));
  std::vector<double> out(lmax + 1);
  double x = 0.37;
  for (auto _ : state) {
    specfun::spherical_bessel_j_array(lmax, x, out);
    benchmark::DoNotOptimize(out.data());
    x = x < 50.0 ? x * 1.1 : 0.37;
  }
}
BENCHMARK(BM_BesselArray)->Arg(8)->Arg(32)->Arg(128);

static void BM_ShtRoundTrip(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const auto rule = make_sphere_rule(2 * L + 4);
  sht::AngularCoefficients c(L);
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) c.coeffs[i] = cplx(1.0 / (1.0 + i), 0.5);
  for (auto _ : state) {
    const auto f = sht::synthesize(c, rule);
    benchmark::DoNotOptimize(sht::analyze(f, L).coeffs.data());
  }
}
BENCHMARK(BM_ShtRoundTrip)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_SynthesisAssemble(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  auto radial = std::make_shared<const RadialRule>(make_radial_rule(24, 1.0));
  auto grid = make_ball_grid(radial, make_sphere_rule(2 * L + 4));
  sht::AngularCoefficients c(L);
  c.at(0, 0) = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(synthesis::assemble_h(synthesis::radial_profiles(c, 1.0, radial), grid).values.data());
  }
}
BENCHMARK(BM_SynthesisAssemble)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_VolumeOperatorApply(benchmark::State& state) {
  const auto grid = make_ball_grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 1.0);
  const VolumeOperator op(grid, 1.0);
  const auto h = BallField::sample(grid, [](const Vec3& p) { return cplx(1.0 + p[0], p[2]); });
  CVector out(grid->size());
  for (auto _ : state) {
    op.apply(h.values, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.counters["nodes"] = static_cast<double>(grid->size());
}
BENCHMARK(BM_VolumeOperatorApply)->Args({12, 8})->Args({24, 20})->Unit(benchmark::kMillisecond);

static void BM_ForwardSolve(benchmark::State& state) {
  const auto grid = make_ball_grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 1.0);
  const VolumeOperator op(grid, 1.0);
  const auto q = BallField::constant(grid, 1.0);
  int iterations = 0;
  for (auto _ : state) {
    const auto s = forward::solve_scattering(q, op, specfun::UnitVector(0.0, 0.0));
    iterations = s.stats.iterations;
    benchmark::DoNotOptimize(s.u.values.data());
  }
  state.counters["gmres_iterations"] = iterations;
}
BENCHMARK(BM_ForwardSolve)->Args({12, 8})->Args({24, 20})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
