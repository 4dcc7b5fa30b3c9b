#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>

#include "bufsim/policies.hpp"
#include "bufsim/simulator.hpp"
#include "bufsim/thresholds.hpp"
#include "bufsim/tracegen.hpp"

using namespace bufsim;

namespace {

// Half-full buffer with a skewed spread; bookkeeping callbacks are applied
// so instrumented policies see a consistent state.
void fill_state(BufferState& state, AdmissionPolicy& policy, const ThresholdTable& table) {
  std::mt19937_64 rng(7);
  for (std::int64_t i = 0; i < state.capacity() / 2; ++i) {
    const int port = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(state.ports()));
    if (state.occupancy(port) < table.max_queue() - 1 && !state.full()) {
      state.admit(port);
      policy.on_admit(state, port);
    }
  }
}

template <typename Policy>
void decide_loop(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const SwitchConfig config{n, 4 * static_cast<std::int64_t>(n)};
  const ThresholdTable table(config);
  Policy policy(config);
  BufferState state(n, config.capacity);
  fill_state(state, policy, table);

  Packet packet{0, 0, 1};
  int port = 1;
  for (auto _ : st) {
    packet.port = port;
    benchmark::DoNotOptimize(policy.decide(state, packet));
    port = port == n ? 1 : port + 1;
  }
}

// Constant-time target: the curve should stay flat as n grows.
void BM_ModifiedHarmonicDecide(benchmark::State& st) {
  decide_loop<ModifiedHarmonicPolicy>(st);
}
BENCHMARK(BM_ModifiedHarmonicDecide)->RangeMultiplier(4)->Range(1, 1024);

// Prefix-budget form sorts the occupancy vector per decision; the curve
// grows with n and is the contrast the threshold form is measured against.
void BM_HarmonicDecide(benchmark::State& st) { decide_loop<HarmonicPolicy>(st); }
BENCHMARK(BM_HarmonicDecide)->RangeMultiplier(4)->Range(1, 1024);

void BM_DynamicThresholdDecide(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const SwitchConfig config{n, 4 * static_cast<std::int64_t>(n)};
  const ThresholdTable table(config);
  DynamicThresholdPolicy policy(config, 1.0);
  BufferState state(n, config.capacity);
  fill_state(state, policy, table);
  Packet packet{0, 0, 1};
  int port = 1;
  for (auto _ : st) {
    packet.port = port;
    benchmark::DoNotOptimize(policy.decide(state, packet));
    port = port == n ? 1 : port + 1;
  }
}
BENCHMARK(BM_DynamicThresholdDecide)->RangeMultiplier(4)->Range(1, 1024);

// Whole engine on a flood workload: arrivals, boundary drains, counters.
void BM_SimulateFlood(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  GenSpec spec;
  spec.kind = GenKind::Flood;
  spec.config = {n, 4 * static_cast<std::int64_t>(n)};
  spec.burst_len = 64;
  spec.length = 64;
  const Trace trace = generate(spec);
  for (auto _ : st) {
    ModifiedHarmonicPolicy policy(spec.config);
    benchmark::DoNotOptimize(simulate(trace, policy).accepted);
  }
  st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations()) *
                       static_cast<std::int64_t>(trace.packets.size()));
}
BENCHMARK(BM_SimulateFlood)->RangeMultiplier(4)->Range(4, 256);

}  // namespace

BENCHMARK_MAIN();
