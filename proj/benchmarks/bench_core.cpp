#include <benchmark/benchmark.h>

#include "anhosc/metric.hpp"
#include "anhosc/quadrature.hpp"
#include "anhosc/quantize.hpp"
#include "anhosc/spectrum.hpp"

using namespace anhosc;

namespace {

void BM_AssembleQuartic(benchmark::State& state) {
  const OscillatorSpec spec = OscillatorSpec::prototype(1, 2, 1);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble(spec, N));
  }
}
BENCHMARK(BM_AssembleQuartic)->Arg(100)->Arg(200)->Arg(400);

void BM_SpectrumQuartic(benchmark::State& state) {
  const OscillatorSpec spec = OscillatorSpec::prototype(1, 2, 1);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectrum(spec, N));
  }
}
BENCHMARK(BM_SpectrumQuartic)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_SlownessSampler(benchmark::State& state) {
  const OscillatorSpec spec = OscillatorSpec::prototype(1, 2, 1);
  const long samples = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_slowness(spec, samples, 7));
  }
}
BENCHMARK(BM_SlownessSampler)->Arg(1000)->Arg(10000);

void BM_QuantizeKernel(benchmark::State& state) {
  Polynomial w(2);
  w.add_term({0, 0}, 1.0);
  w.add_term({2, 0}, 1.0);
  w.add_term({0, 2}, 1.0);
  const SymbolExpr a = SymbolExpr::pow(w, 1, -2.0);
  const int M = static_cast<int>(state.range(0));
  const PhaseGrid grid{12.0, 12.0, M, M};
  for (auto _ : state) {
    benchmark::DoNotOptimize(quantize(a, 0.5, grid));
  }
}
BENCHMARK(BM_QuantizeKernel)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_PhaseSpaceIntegral(benchmark::State& state) {
  Polynomial w(2);
  w.add_term({0, 0}, 1.0);
  w.add_term({2, 0}, 1.0);
  w.add_term({0, 2}, 1.0);
  const SymbolExpr a = SymbolExpr::pow(w, 1, -2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(phase_space_integral(a, QuadScheme::kCartesian, 1e-8));
  }
}
BENCHMARK(BM_PhaseSpaceIntegral)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
