#include <benchmark/benchmark.h>

#include <cmath>

#include "polymc/annealing.hpp"
#include "polymc/host_graph.hpp"
#include "polymc/oracle.hpp"
#include "polymc/polymer_dynamics.hpp"
#include "polymc/potts.hpp"
#include "polymc/restricted_glauber.hpp"
#include "polymc/subgraph_enum.hpp"

namespace {

using namespace polymc;

void BM_ConnectedSets(benchmark::State& state) {
  const HostGraph g = generate_random_regular_bipartite(500, 3, 1);
  const auto k = static_cast<std::size_t>(state.range(0));
  ConnectedSetEnumerator en(g);
  std::size_t total = 0;
  Vertex v = 0;
  for (auto _ : state) {
    total += en.run(v, k, [](Vertex) { return true; }, [](std::span<const Vertex>) {});
    v = (v + 1) % static_cast<Vertex>(g.size());
  }
  state.counters["sets_per_call"] = benchmark::Counter(static_cast<double>(total), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_ConnectedSets)->DenseRange(1, 6);

void BM_NuSample(benchmark::State& state) {
  const HostGraph g = generate_random_regular_bipartite(500, 3, 2);
  DecayModel m(g, 2, static_cast<double>(state.range(0)));
  NuSampler sampler(m);
  Rng rng = chain_rng(3);
  Vertex v = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sampler.sample(v, rng));
    v = (v + 1) % static_cast<Vertex>(g.size());
  }
}
BENCHMARK(BM_NuSample)->Arg(6)->Arg(8)->Arg(12);

// Per-step cost should stay flat in n.
void BM_PolymerStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const HostGraph g = generate_random_regular_bipartite(n / 2, 3, 4);
  DecayModel m(g, 2, 8.0);
  NuSampler sampler(m);
  Configuration c(g);
  Rng rng = chain_rng(5);
  for (auto _ : state) benchmark::DoNotOptimize(step(c, sampler, rng));
}
BENCHMARK(BM_PolymerStep)->Arg(100)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_RunChainPotts(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const HostGraph g = generate_random_regular_bipartite(n / 2, 3, 6);
  PottsParams p;
  p.q = 3;
  p.beta = 40.0;
  p.alpha = 0.25;
  PottsModel m(g, p);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_chain(m, 0.1, ++seed).steps_taken);
}
BENCHMARK(BM_RunChainPotts)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_EstimatePartition(benchmark::State& state) {
  const HostGraph g = path_graph(3);
  VertexHardcoreModel m(g, 0.05);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(estimate_partition(m, 0.3, ++seed).log_z_hat);
}
BENCHMARK(BM_EstimatePartition)->Unit(benchmark::kMillisecond);

void BM_GlauberStep(benchmark::State& state) {
  const HostGraph g = generate_random_regular_bipartite(500, 3, 7);
  PottsParams p;
  p.q = 3;
  p.beta = 1.0;
  p.size_cap = static_cast<std::size_t>(state.range(0));
  PottsModel m(g, p);
  Configuration c(g);
  Rng rng = chain_rng(8);
  for (auto _ : state) benchmark::DoNotOptimize(glauber_step(c, m, rng));
}
BENCHMARK(BM_GlauberStep)->Arg(2)->Arg(4);

void BM_ExactKernel(benchmark::State& state) {
  const HostGraph g = cycle_graph(static_cast<std::size_t>(state.range(0)));
  VertexHardcoreModel m(g, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(exact_kernel(m, Dynamics::polymer).states.size());
}
BENCHMARK(BM_ExactKernel)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
