#include <benchmark/benchmark.h>

#include "fockband/channel.hpp"
#include "fockband/determinant.hpp"
#include "fockband/oracle.hpp"
#include "fockband/problem.hpp"

namespace {

using namespace fockband;

void bm_assemble_full(benchmark::State& state) {
  const ModelProblem pb = preset("symmetric", 1, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    DenseSymOperator op = assemble_full(pb);
    benchmark::DoNotOptimize(op.mat.data());
  }
}
BENCHMARK(bm_assemble_full)->Arg(6)->Arg(8)->Arg(10)->Arg(12);

void bm_delta3_scan(benchmark::State& state) {
  const ModelProblem pb = preset("symmetric", 1, static_cast<int>(state.range(0)));
  DeterminantEvaluator det(pb);
  for (auto _ : state) {
    double acc = 0.0;
    const Interval band = det.band3(0, 0);
    for (int j = 0; j < 200; ++j)
      acc += det.delta3(0, 0, band.lo - 1.0 - 0.01 * j);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(bm_delta3_scan)->Arg(12)->Arg(24)->Arg(48);

void bm_eig_full(benchmark::State& state) {
  const ModelProblem pb = preset("symmetric", 1, static_cast<int>(state.range(0)));
  const DenseSymOperator op = assemble_full(pb);
  for (auto _ : state) {
    EigResult r = eig_sym(op);
    benchmark::DoNotOptimize(r.values.data());
  }
}
BENCHMARK(bm_eig_full)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void bm_essential_spectrum(benchmark::State& state) {
  const ModelProblem pb = preset("symmetric", 1, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    ChannelAnalyzer chan(pb);
    auto ess = chan.essential_spectrum();
    benchmark::DoNotOptimize(ess.essential.min());
  }
}
BENCHMARK(bm_essential_spectrum)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
