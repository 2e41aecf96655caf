#include <benchmark/benchmark.h>

#include <cmath>

#include "glide/airy.hpp"
#include "glide/exponents.hpp"
#include "glide/parametrix.hpp"
#include "glide/spectrum.hpp"
#include "glide/wavepacket.hpp"

using namespace glide;

static void BM_AiryReal(benchmark::State& state) {
  double x = -30.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ai(x));
    x = x > 30.0 ? -30.0 : x + 0.37;
  }
}
BENCHMARK(BM_AiryReal);

// one argument per evaluator region: series, Taylor bridge, asymptotics
static void BM_AiryComplex(benchmark::State& state) {
  const Complex z = std::polar(static_cast<double>(state.range(0)), 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(ai(z));
}
BENCHMARK(BM_AiryComplex)->Arg(1)->Arg(5)->Arg(20);

static void BM_PhaseL(benchmark::State& state) {
  double w = -5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(big_l(w));
    w = w > 40.0 ? -5.0 : w + 0.53;
  }
}
BENCHMARK(BM_PhaseL);

static void BM_PhaseTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(PhaseTable(static_cast<int>(state.range(0))).size());
}
BENCHMARK(BM_PhaseTable)->Arg(50)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_Eigenfunction(benchmark::State& state) {
  const EigenMode m = make_mode(10, 100.0);
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigenfunction(m, x));
    x = x > 0.2 ? 0.0 : x + 1e-3;
  }
}
BENCHMARK(BM_Eigenfunction);

static void BM_GramMatrix(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gram_matrix(100.0, 10).size());
}
BENCHMARK(BM_GramMatrix)->Unit(benchmark::kMillisecond);

static void BM_DatumClosed(benchmark::State& state) {
  double z = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(v0_closed(z, 200.0, 14.0));
    z = z > 1.5 ? 0.0 : z + 0.01;
  }
}
BENCHMARK(BM_DatumClosed);

static void BM_DatumQuadrature(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(v0_oscillatory(0.9, 200.0, 14.0));
}
BENCHMARK(BM_DatumQuadrature)->Unit(benchmark::kMicrosecond);

static void BM_ParametrixPoint(benchmark::State& state) {
  const PacketParams p = params_for_lambda(static_cast<double>(state.range(0)), {});
  const double t = 4.0 * std::sqrt(1.0 + p.a);
  for (auto _ : state) benchmark::DoNotOptimize(parametrix_u(t, 1.0, 4.0 / 3.0, p));
}
BENCHMARK(BM_ParametrixPoint)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_ExponentRegions(benchmark::State& state) {
  const StrichartzPair p = StrichartzPair::parse("36/7", "inf");
  for (auto _ : state)
    for (Region r : all_regions()) benchmark::DoNotOptimize(region(r, p).slack);
}
BENCHMARK(BM_ExponentRegions);

BENCHMARK_MAIN();
