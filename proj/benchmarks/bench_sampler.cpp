#include <benchmark/benchmark.h>

#include "baum/sampler.hpp"
#include "baum/simulation.hpp"

namespace {

using namespace baum;

std::pair<ProblemInput, Hyperparameters> gn1_instance(int size) {
  auto cfg = default_scenario_config("GN1", 7);
  cfg.p = cfg.k = size;
  auto [input, truth] = build_scenario(cfg);
  return {std::move(input), cfg.hp};
}

void BM_GibbsSweep(benchmark::State& state) {
  auto [input, hp] = gn1_instance(static_cast<int>(state.range(0)));
  GibbsChain chain(input, hp, 11);
  for (auto _ : state) {
    chain.sweep();
    benchmark::DoNotOptimize(chain.state().sigma2);
  }
}
BENCHMARK(BM_GibbsSweep)->Arg(100)->Arg(1000);

void BM_SwendsenWangUpdate(benchmark::State& state) {
  auto [input, hp] = gn1_instance(static_cast<int>(state.range(0)));
  GibbsChain chain(input, hp, 13);
  for (auto _ : state) {
    chain.update_z();
    benchmark::DoNotOptimize(chain.state().z.front());
  }
}
BENCHMARK(BM_SwendsenWangUpdate)->Arg(1000);

void BM_BarabasiAlbert(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto net = generate_barabasi_albert(static_cast<int>(state.range(0)), 1, seed++);
    benchmark::DoNotOptimize(net.edge_count());
  }
}
BENCHMARK(BM_BarabasiAlbert)->Arg(1000)->Arg(10000);

void BM_RunChainSmall(benchmark::State& state) {
  auto [input, hp] = gn1_instance(200);
  ChainConfig cfg;
  cfg.n_burnin = 50;
  cfg.n_iter = 200;
  cfg.rng_seed = 5;
  for (auto _ : state) {
    auto [summary, trace] = run_chain(input, hp, cfg);
    benchmark::DoNotOptimize(summary.mean_sigma2);
  }
}
BENCHMARK(BM_RunChainSmall)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
