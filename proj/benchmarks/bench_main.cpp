#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "critline/arith.hpp"
#include "critline/forms.hpp"
#include "critline/lattice.hpp"
#include "critline/moments.hpp"
#include "critline/parallel.hpp"
#include "critline/voronoi.hpp"

using namespace critline;

static void BM_TauTable(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(arith::ramanujan_tau(s.range(0)));
}
BENCHMARK(BM_TauTable)->Arg(1 << 12)->Arg(1 << 15)->Unit(benchmark::kMillisecond);

static void BM_DirichletLattice(benchmark::State& s) {
  std::vector<double> b(s.range(0));
  for (std::size_t n = 0; n < b.size(); ++n) b[n] = 1.0 / std::sqrt(n + 1.0);
  const lattice::DirichletLattice L(b, 0.01);
  std::vector<cplx> out(lattice::kReseed);
  for (auto _ : s) {
    L.eval(1000.0, 0, out.size(), out.data());
    benchmark::DoNotOptimize(out.data());
  }
  s.SetItemsProcessed(s.iterations() * b.size() * out.size());
}
BENCHMARK(BM_DirichletLattice)->Arg(1000)->Arg(10000);

static void BM_MixedMoment(benchmark::State& s) {
  set_worker_count(1);
  const double T = s.range(0);
  const auto shape = forms::build_delta(1);
  const auto f = forms::build_delta(moments::required_table_length(shape, T, moments::Engine::direct));
  moments::MomentJob job;
  job.form = &f;
  job.T = T;
  job.window = moments::make_window(4);
  job.richardson = false;
  for (auto _ : s) benchmark::DoNotOptimize(moments::mixed_moment(job));
}
BENCHMARK(BM_MixedMoment)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_KloostermanModulus(benchmark::State& s) {
  const std::int64_t c = s.range(0);
  for (auto _ : s) {
    const arith::KloostermanModulus km(c);
    double acc = 0;
    for (std::int64_t a = 1; a <= 32; ++a) acc += km.sum(a, 1);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_KloostermanModulus)->Arg(97)->Arg(997)->Arg(9973);

static void BM_PhiPlus(benchmark::State& s) {
  const auto k = voronoi::make_kernel(13.7797513518907362);
  double x = 0.5;
  for (auto _ : s) {
    benchmark::DoNotOptimize(voronoi::phi_plus(k, x));
    x = x < 100 ? x * 1.1 : 0.5;
  }
}
BENCHMARK(BM_PhiPlus)->Unit(benchmark::kMicrosecond);

static void BM_PhiMinus(benchmark::State& s) {
  const auto k = voronoi::make_kernel(13.7797513518907362);
  double x = 0.5;
  for (auto _ : s) {
    benchmark::DoNotOptimize(voronoi::phi_minus(k, x));
    x = x < 100 ? x * 1.1 : 0.5;
  }
}
BENCHMARK(BM_PhiMinus)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
