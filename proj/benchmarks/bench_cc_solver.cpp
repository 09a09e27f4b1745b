#include "sigvote/cc_solver.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace sigvote;

namespace {

WeightedSignedGraph planted(std::size_t n, std::size_t blocks, double noise, std::uint64_t seed) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("n" + std::to_string(i));
    WeightedSignedGraph g(ids);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0, 1);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            double w = u % blocks == v % blocks ? 1.0 : -1.0;
            if (unit(rng) < noise) w = -w;
            g.set_weight(u, v, w);
        }
    }
    return g;
}

}  // namespace

static void BM_SolveExactPlanted(benchmark::State& state) {
    const auto g = planted(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)), 0.0, 5);
    for (auto _ : state) benchmark::DoNotOptimize(solve_exact(g));
}
BENCHMARK(BM_SolveExactPlanted)->Args({10, 2})->Args({20, 3})->Args({40, 3})->Args({40, 4})->Unit(benchmark::kMillisecond);

static void BM_SolveExactNoisy(benchmark::State& state) {
    const auto g = planted(static_cast<std::size_t>(state.range(0)), 3, 0.05, 6);
    for (auto _ : state) benchmark::DoNotOptimize(solve_exact(g));
}
BENCHMARK(BM_SolveExactNoisy)->Arg(10)->Arg(16)->Arg(22)->Unit(benchmark::kMillisecond);

static void BM_BruteForce(benchmark::State& state) {
    const auto g = planted(static_cast<std::size_t>(state.range(0)), 2, 0.1, 7);
    for (auto _ : state) benchmark::DoNotOptimize(brute_force(g));
}
BENCHMARK(BM_BruteForce)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_Heuristic(benchmark::State& state) {
    const auto g = planted(static_cast<std::size_t>(state.range(0)), 4, 0.1, 8);
    for (auto _ : state) benchmark::DoNotOptimize(solve_heuristic(g, 1));
}
BENCHMARK(BM_Heuristic)->Arg(40)->Arg(200)->Unit(benchmark::kMillisecond);
