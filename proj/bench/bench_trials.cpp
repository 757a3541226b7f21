// Serial reference runner against the OpenMP runner on the same trial workload.

#include "cdual/maps.hpp"
#include "cdual/trials.hpp"

#include <benchmark/benchmark.h>

using namespace cdual;

namespace {

// The A2 braid-move transform followed by its inverse, compared with the identity.
struct Workload {
  WordContext ctx{parse_cartan("A2")};
  Word w{1, 2, 1, -1, -2};
  RationalMap m = path_transform(ctx, w, {-1, -2, 2, 1, 2}, WordContext::all_moves(), false);
  RationalMap round = m.then(m.inverse());
};

const Workload& workload() {
  static const Workload wl;
  return wl;
}

void run(benchmark::State& state, bool parallel) {
  const Workload& wl = workload();
  TrialConfig cfg;
  cfg.trials = static_cast<std::size_t>(state.range(0));
  cfg.parallel = parallel;
  const std::size_t dim = Layout::of(wl.w, 2).size();
  auto pair_fn = [&](const auto& x) { return std::make_pair(wl.round.apply(x), x); };
  for (auto _ : state) {
    const Verdict v = maps_equal_probabilistic(pair_fn, dim, cfg);
    if (!v.equal()) state.SkipWithError("identity failed");
    benchmark::DoNotOptimize(v.trials);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TrialsSerial(benchmark::State& state) { run(state, false); }
void BM_TrialsParallel(benchmark::State& state) { run(state, true); }

}  // namespace

BENCHMARK(BM_TrialsSerial)->Arg(64)->Arg(512)->UseRealTime();
BENCHMARK(BM_TrialsParallel)->Arg(64)->Arg(512)->UseRealTime();

BENCHMARK_MAIN();
