#include <benchmark/benchmark.h>

#include "carnot/catalog.hpp"
#include "carnot/kernels.hpp"
#include "carnot/random.hpp"
#include "carnot/verify.hpp"

using namespace carnot;

namespace {

struct FlowSetup {
  std::vector<CompiledField> fields;
  std::vector<FlowJob> jobs;
};

FlowSetup flow_setup(std::size_t count) {
  Rng rng(1);
  const WeightVector w({1, 1, 2, 3, 3});
  FlowSetup s;
  for (const auto& f : random_triangular_fields(rng, w, 3)) s.fields.emplace_back(f);
  for (std::size_t i = 0; i < count; ++i)
    s.jobs.push_back({to_double(random_point(rng, 5, 1, 2)), to_double(random_unit_direction(rng, 5)), 1.0});
  return s;
}

void BM_BatchFlowsSerial(benchmark::State& state) {
  const auto s = flow_setup(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(serial::batch_flows(s.fields, s.jobs, 1e-3));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BatchFlowsParallel(benchmark::State& state) {
  const auto s = flow_setup(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(parallel::batch_flows(s.fields, s.jobs, 1e-3));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void osculation(benchmark::State& state, bool parallel) {
  const FrameContext ctx(catalog("perturbed_engel_4").frame, "perturbed_engel_4");
  Rng rng(2);
  OsculationOptions options;
  for (int i = 0; i < 8; ++i) options.directions.push_back(random_unit_direction(rng, 8));
  options.parallel = parallel;
  for (auto _ : state) benchmark::DoNotOptimize(osculation_report(ctx, ctx.epsilon(), options));
  state.SetItemsProcessed(state.iterations() * 8 * options.t_grid.size());
}

void BM_OsculationSerial(benchmark::State& state) { osculation(state, false); }
void BM_OsculationParallel(benchmark::State& state) { osculation(state, true); }

}  // namespace

BENCHMARK(BM_BatchFlowsSerial)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchFlowsParallel)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OsculationSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OsculationParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
