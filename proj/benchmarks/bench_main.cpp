#include <benchmark/benchmark.h>

#include "coalition/equilibrium.hpp"
#include "coalition/generators.hpp"
#include "coalition/topology.hpp"

using namespace coalition;

namespace {

void BM_LineCoverageSweep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Instance inst = gen_random_line(n, 2.0 * n, 7);
  std::vector<PlayerId> members(n);
  for (int i = 0; i < n; ++i) members[i] = i;
  for (auto _ : state) {
    auto rep = coverage_measure(members, inst);
    benchmark::DoNotOptimize(rep.a_s);
  }
}
BENCHMARK(BM_LineCoverageSweep)->Arg(16)->Arg(256)->Arg(4096);

void BM_GraphCoverage(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Instance inst = gen_random_regular(n, 4, 11);
  std::vector<PlayerId> members;
  for (int i = 0; i < n; i += 3) members.push_back(i);
  for (auto _ : state) {
    auto rep = coverage_measure(members, inst);
    benchmark::DoNotOptimize(rep.a_s);
  }
}
BENCHMARK(BM_GraphCoverage)->Arg(64)->Arg(512);

void BM_McUnionVolume(benchmark::State& state) {
  Instance inst = gen_random_euclid(3, 12, 5.0, 13);
  const auto& centers = std::get<EuclideanD>(inst.topo).positions;
  SamplingConfig cfg;
  cfg.samples = state.range(0);
  for (auto _ : state) {
    auto est = mc_union_ball_volume(centers, 3, 1.0, cfg);
    benchmark::DoNotOptimize(est.value);
  }
}
BENCHMARK(BM_McUnionVolume)->Arg(10000)->Arg(100000);

void BM_NashCheckGeneral(benchmark::State& state) {
  GklResult gkl = gen_gkl(23, 3, 0.5);
  Instance inst{gkl.graph};
  CoverageOracle oracle(inst);
  RiskModel risk(0.5);
  for (auto _ : state) {
    auto rep = is_nash(gkl.star_partition, oracle, risk);
    benchmark::DoNotOptimize(rep.is_nash);
  }
}
BENCHMARK(BM_NashCheckGeneral);

void BM_NashCheckFast(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Instance inst = gen_random_regular(n, 3, 17);
  RiskModel risk(0.5);
  FastNashChecker fast(inst, risk);
  Partition part = Partition::singletons(n);
  for (auto _ : state) benchmark::DoNotOptimize(fast.is_nash(part));
}
BENCHMARK(BM_NashCheckFast)->Arg(8)->Arg(16);

void BM_EnumerateNash(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Instance inst = gen_random_line(n, 2.0 * n, 23);
  RiskModel risk(0.5);
  for (auto _ : state) {
    auto nash = enumerate_nash(inst, risk);
    benchmark::DoNotOptimize(nash.size());
  }
}
BENCHMARK(BM_EnumerateNash)->Arg(8)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
