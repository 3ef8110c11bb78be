#include <benchmark/benchmark.h>

#include "secrecy/closed_form.hpp"
#include "secrecy/model.hpp"
#include "secrecy/montecarlo.hpp"
#include "secrecy/oracle.hpp"

using namespace secrecy;

namespace {

SystemConfig bench_config(std::size_t m, std::size_t n) {
    return SystemConfig::symmetric(m, n, 1.0, 1.0, 0.1, 1.0, 10.0, 1.0);
}

void BM_sample_channels(benchmark::State& state) {
    const SystemConfig cfg = bench_config(8, 4);
    RandomStream rng(1);
    ChannelDraw draw;
    for (auto _ : state) {
        sample_channels(cfg, rng, draw);
        benchmark::DoNotOptimize(draw.g_main[0]);
    }
}
BENCHMARK(BM_sample_channels);

void BM_outage_user_uncoordinated(benchmark::State& state) {
    const SystemConfig cfg = bench_config(1, state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(outage_user_uncoordinated(0, cfg).value);
}
BENCHMARK(BM_outage_user_uncoordinated)->Arg(4)->Arg(8)->Arg(12)->Arg(16);

// Subset enumeration cost grows as M * 2^(N + M - 1).
void BM_outage_suboptimal_uncoordinated(benchmark::State& state) {
    const SystemConfig cfg = bench_config(state.range(0), state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(outage_suboptimal_uncoordinated(cfg).value);
}
BENCHMARK(BM_outage_suboptimal_uncoordinated)
    ->Args({4, 2})
    ->Args({8, 4})
    ->Args({12, 6});

void BM_outage_suboptimal_coordinated(benchmark::State& state) {
    const SystemConfig cfg = bench_config(state.range(0), 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(outage_suboptimal_coordinated(cfg).value);
}
BENCHMARK(BM_outage_suboptimal_coordinated)->Arg(4)->Arg(8)->Arg(12);

void BM_estimate_outage(benchmark::State& state) {
    const SystemConfig cfg = bench_config(8, 4);
    SimulationOptions opts;
    opts.threads = 1;
    for (auto _ : state) {
        const auto est = estimate_outage(Scheme::Optimal, EavesdropperMode::Coordinated,
                                         cfg, 1 << 14, 7, opts);
        benchmark::DoNotOptimize(est.p_hat);
    }
    state.SetItemsProcessed(state.iterations() * (1 << 14));
}
BENCHMARK(BM_estimate_outage)->Unit(benchmark::kMillisecond);

void BM_quadrature_suboptimal(benchmark::State& state) {
    const SystemConfig cfg = bench_config(2, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(oracle::quad_outage_suboptimal_uncoordinated(cfg).value);
}
BENCHMARK(BM_quadrature_suboptimal)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
