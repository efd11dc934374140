// Serial, OpenMP and direct-sum reference paths of the hot kernels.

#include <benchmark/benchmark.h>

#include "phasekit/kernels.hpp"
#include "phasekit/propagators.hpp"
#include "phasekit/tf.hpp"
#include "phasekit/verify.hpp"

using namespace phasekit;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(1) ? Exec::parallel : Exec::serial; }

void BM_cross_wigner(benchmark::State& s) {
  const auto f = random_smooth_field(make_grid(1, static_cast<int>(s.range(0)), 16.0), 1);
  for (auto _ : s) benchmark::DoNotOptimize(cross_wigner(f, f, exec_of(s)));
}

void BM_cross_wigner_reference(benchmark::State& s) {
  const auto f = random_smooth_field(make_grid(1, static_cast<int>(s.range(0)), 16.0), 1);
  for (auto _ : s) benchmark::DoNotOptimize(reference::cross_wigner(f, f));
}

void BM_stft(benchmark::State& s) {
  const Grid g = make_grid(1, static_cast<int>(s.range(0)), 16.0);
  const auto f = random_smooth_field(g, 2);
  const auto w = gaussian_window(g);
  for (auto _ : s) benchmark::DoNotOptimize(stft(f, w, g.dual(), exec_of(s)));
}

void BM_stft_reference(benchmark::State& s) {
  const Grid g = make_grid(1, static_cast<int>(s.range(0)), 16.0);
  const auto f = random_smooth_field(g, 2);
  const auto w = gaussian_window(g);
  for (auto _ : s) benchmark::DoNotOptimize(reference::stft(f, w));
}

void BM_apply_kernel(benchmark::State& s) {
  const auto f = random_smooth_field(make_grid(1, static_cast<int>(s.range(0)), 16.0), 3);
  const auto W = cross_wigner(f, f);
  const auto k = make_heat_kernel(0.3, {1.0, 0.5}, 1);
  for (auto _ : s) benchmark::DoNotOptimize(apply_kernel(k, W, exec_of(s)));
}

void BM_apply_kernel_reference(benchmark::State& s) {
  const auto f = random_smooth_field(make_grid(1, static_cast<int>(s.range(0)), 16.0), 3);
  const auto W = cross_wigner(f, f);
  const auto k = make_heat_kernel(0.3, {1.0, 0.5}, 1);
  for (auto _ : s) benchmark::DoNotOptimize(reference::apply_kernel(k, W));
}

void BM_hermite_apply(benchmark::State& s) {
  const auto f = random_smooth_field(make_grid(2, static_cast<int>(s.range(0)), 8.0), 4);
  for (auto _ : s) benchmark::DoNotOptimize(hermite_apply({{0.5, 0.8}}, f, exec_of(s)));
}

}  // namespace

BENCHMARK(BM_cross_wigner)->ArgsProduct({{128, 512}, {0, 1}});
BENCHMARK(BM_cross_wigner_reference)->Arg(128);
BENCHMARK(BM_stft)->ArgsProduct({{128, 512}, {0, 1}});
BENCHMARK(BM_stft_reference)->Arg(128);
BENCHMARK(BM_apply_kernel)->ArgsProduct({{128, 512}, {0, 1}});
BENCHMARK(BM_apply_kernel_reference)->Arg(128);
BENCHMARK(BM_hermite_apply)->ArgsProduct({{32, 128}, {0, 1}});

BENCHMARK_MAIN();
