#include <cstdint>
#include <cmath>
#include <numbers>

#include <benchmark/benchmark.h>

#include "gvmm/fluid.hpp"
#include "gvmm/period.hpp"
#include "gvmm/poisson.hpp"
#include "gvmm/systems.hpp"

using namespace gvmm;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void BM_HelicityAbc(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const VectorFieldGrid v = abc_flow(Grid::cube(3, n, kTwoPi), 1.0, 1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(helicity(v));
  state.SetComplexityN(static_cast<int64_t>(n) * n * n);
}
BENCHMARK(BM_HelicityAbc)->RangeMultiplier(2)->Range(16, 64)->Unit(benchmark::kMillisecond)->Complexity();

void BM_SpectralPartial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g = Grid::cube(3, n, kTwoPi);
  const Array f = sample(g, [](const std::vector<double>& x) { return std::sin(x[0]) * std::cos(2 * x[1] + x[2]); });
  for (auto _ : state) benchmark::DoNotOptimize(partial(g, f, 1));
}
BENCHMARK(BM_SpectralPartial)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMicrosecond);

void BM_PeriodT4(benchmark::State& state) {
  const Vec base = Vec::Constant(4, 0.5);
  const auto alpha = build_primitive(t4_diagonal_circle(base), abelian_pairing(1));
  Vec w = Vec::Zero(4);
  w(3) = 1.0;
  const LoopPath loop = lattice_loop(base, w, Vec::Ones(4));
  const double dt = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(period_homomorphism(alpha, loop, DualGroup{}, dt));
}
BENCHMARK(BM_PeriodT4)->Arg(100)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_NoetherOscillator(benchmark::State& state) {
  Vec z(2);
  z << 0.7, -0.3;
  const auto sys = oscillator_system(z);
  Hamiltonian h;
  h.value = [](const Vec& v) { return 0.5 * v.squaredNorm(); };
  h.gradient = [](const Vec& v) { return v; };
  for (auto _ : state) benchmark::DoNotOptimize(noether_drift(sys, h, 1.0, 1e-3));
}
BENCHMARK(BM_NoetherOscillator)->Unit(benchmark::kMillisecond);

void BM_MatchedPair(benchmark::State& state) {
  const DualPairing p = iwasawa_pairing(2);
  const GroupModel su{Tag::su_n, 2, false}, b{Tag::b_n, 2, false};
  std::vector<Mat> ks, bs;
  for (int i = 0; i < state.range(0); ++i) {
    const double t = 0.1 * (i % 10 + 1);
    ks.push_back(su.exp(t * p.basis_left()[i % 3]));
    bs.push_back(b.exp(t * p.basis_right()[(i + 1) % 3]));
  }
  const auto pair = iwasawa_pair(2);
  for (auto _ : state) benchmark::DoNotOptimize(check_matched_pair(pair, p, ks, bs));
}
BENCHMARK(BM_MatchedPair)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_KksResidual(benchmark::State& state) {
  Vec u(2);
  u << 0.3, -0.4;
  const auto sys = kks_orbit_system(OrbitKind::elliptic, 1.5, u);
  const PairingFn k = as_fn(killing_sl2R());
  for (auto _ : state) benchmark::DoNotOptimize(momentum_residual_all(sys, k));
}
BENCHMARK(BM_KksResidual)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
