#include "sigvote/multiplex.hpp"
#include "sigvote/partition_metrics.hpp"
#include "sigvote/pattern_clustering.hpp"
#include "sigvote/pipeline.hpp"
#include "sigvote/synthetic.hpp"

#include <benchmark/benchmark.h>

using namespace sigvote;

namespace {

std::vector<Pattern> synthetic_patterns(std::size_t n_rollcalls) {
    auto spec = default_synthetic_spec(3);
    spec.n_rollcalls = n_rollcalls;
    const auto data = generate_synthetic(spec);
    return patterns_from_layers(solve_layers(extract_multiplex(data.matrix, AbstentionPolicy::Keep), {}, 1));
}

}  // namespace

static void BM_DissimilarityMatrix(benchmark::State& state) {
    const auto patterns = synthetic_patterns(static_cast<std::size_t>(state.range(0)));
    const auto measure = static_cast<Measure>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(dissimilarity_matrix(patterns, measure));
}
BENCHMARK(BM_DissimilarityMatrix)
    ->ArgsProduct({{60, 200}, {static_cast<long>(Measure::Purity), static_cast<long>(Measure::Nmi)}})
    ->Unit(benchmark::kMillisecond);

static void BM_KMedoids(benchmark::State& state) {
    const auto d = dissimilarity_matrix(synthetic_patterns(static_cast<std::size_t>(state.range(0))), Measure::Purity);
    KMedoidsOptions options;
    options.seed = 1;
    for (auto _ : state) benchmark::DoNotOptimize(k_medoids(d, 3, options));
}
BENCHMARK(BM_KMedoids)->Arg(60)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_Sweep(benchmark::State& state) {
    const auto d = dissimilarity_matrix(synthetic_patterns(60), Measure::Purity);
    KMedoidsOptions options;
    options.seed = 1;
    const auto jobs = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sweep_k(d, 2, 12, options, jobs));
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_MAIN();
