#include <benchmark/benchmark.h>

#include "osnma/engine.hpp"
#include "osnma/inav.hpp"
#include "osnma/scenario.hpp"
#include "osnma/sweep.hpp"
#include "osnma/tesla.hpp"

using namespace osnma;

namespace {

const ScenarioOutput& ideal() {
  static const ScenarioOutput out = Scenario(preset("ideal_4conn")).generate();
  return out;
}

void BM_ParsePage(benchmark::State& state) {
  const auto& rec = ideal().records.front();
  for (auto _ : state) benchmark::DoNotOptimize(parse_page(rec.page, rec.svid, rec.gst));
}
BENCHMARK(BM_ParsePage);

void BM_EngineReplay(benchmark::State& state) {
  const auto& out = ideal();
  for (auto _ : state) {
    Engine e(out.hotstart, TimeSyncPolicy::named("cop_iod"));
    for (const auto& r : out.records) e.process_page(r);
    benchmark::DoNotOptimize(e.has_fix());
  }
  state.SetItemsProcessed(int64_t(state.iterations() * out.records.size()));
}
BENCHMARK(BM_EngineReplay)->Unit(benchmark::kMillisecond);

void BM_VerifyKey(benchmark::State& state) {
  const auto& out = ideal();
  const int64_t gap = state.range(0);
  const int64_t sf = out.hotstart.root.gst_sf.subframe_index() + gap;
  const TeslaKey k{out.truth.keys.at(sf), GstTime::from_subframe_index(sf), 0};
  for (auto _ : state) benchmark::DoNotOptimize(verify_key(k, out.hotstart.root, out.hotstart.chain));
}
BENCHMARK(BM_VerifyKey)->Arg(1)->Arg(4)->Arg(8);

void BM_Sweep(benchmark::State& state) {
  const auto& out = ideal();
  SweepOptions o;
  o.count = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(sweep(out.records, out.hotstart, TimeSyncPolicy::named("cop_iod"), o));
}
BENCHMARK(BM_Sweep)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
