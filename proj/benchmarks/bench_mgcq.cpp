#include <benchmark/benchmark.h>

#include "mgcq/cftp.hpp"
#include "mgcq/kw.hpp"
#include "mgcq/rng.hpp"

using namespace mgcq;

namespace {

void BM_kw_update(benchmark::State& state) {
    const int c = static_cast<int>(state.range(0));
    RandomStream rng(1);
    WorkloadVector v(c);
    for (auto _ : state) {
        v = kw_update(std::move(v), rng.exponential(2.0), rng.exponential(10.0));
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_kw_update)->Arg(2)->Arg(10)->Arg(50);

void BM_kw_decay(benchmark::State& state) {
    const int c = static_cast<int>(state.range(0));
    RandomStream rng(2);
    WorkloadVector v(c);
    for (auto _ : state) {
        v = kw_update(std::move(v), rng.exponential(2.0), 0.0);
        v = kw_decay(std::move(v), rng.exponential(10.0));
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_kw_decay)->Arg(2)->Arg(10)->Arg(50);

void BM_algorithm1(benchmark::State& state) {
    const int c = static_cast<int>(state.range(0));
    QueueParams p{static_cast<double>(c), c, ServiceDistribution::exponential(2.0)};
    std::uint64_t rep = 0;
    for (auto _ : state) {
        auto s = algorithm1(p, substream_seed(17, rep++, StreamPurpose::replication));
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_algorithm1)->Arg(2)->Arg(5)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_algorithm2(benchmark::State& state) {
    const int c = static_cast<int>(state.range(0));
    QueueParams p{static_cast<double>(c), c, ServiceDistribution::exponential(2.0)};
    std::uint64_t rep = 0;
    for (auto _ : state) {
        auto s = algorithm2(p, substream_seed(18, rep++, StreamPurpose::replication));
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_algorithm2)->Arg(2)->Arg(5)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_dominating_emptying(benchmark::State& state) {
    const int c = static_cast<int>(state.range(0));
    QueueParams p{static_cast<double>(c), c, ServiceDistribution::exponential(2.0)};
    std::uint64_t rep = 0;
    for (auto _ : state) {
        DominatingPath path(p, substream_seed(19, rep++, StreamPurpose::replication));
        benchmark::DoNotOptimize(path.first_all_empty());
    }
}
BENCHMARK(BM_dominating_emptying)->Arg(2)->Arg(10)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
