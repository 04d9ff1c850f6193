// Microbenchmarks for the hot paths: assignment + mean update, population
// updates, certificate evaluation, label matching, and the pruned seeding.

#include "kmstab/certify.hpp"
#include "kmstab/init_schemes.hpp"
#include "kmstab/kmeans.hpp"
#include "kmstab/models.hpp"
#include "kmstab/population.hpp"
#include "kmstab/stability.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace kmstab;

namespace {

Dataset cloud(std::size_t n, std::size_t d, std::uint64_t seed) {
    Rng rng(seed);
    Dataset data;
    data.n = n;
    data.d = d;
    data.x.resize(n * d);
    for (double& v : data.x) v = -5.0 + 10.0 * rng.uniform();
    return data;
}

void bm_lloyd_step(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const Dataset data = cloud(n, 2, 1);
    Rng rng(2);
    const Centers init = init_uniform(data, 4, rng);
    for (auto _ : state) {
        const Assignment asg = assign(data, init);
        benchmark::DoNotOptimize(lloyd_step(data, init, asg));
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * n);
}
BENCHMARK(bm_lloyd_step)->Arg(100)->Arg(1000)->Arg(10000);

void bm_population_update(benchmark::State& state) {
    const GaussianMixture1D m = two_component(0.3, 7.0);
    const std::vector<double> centers = {-1.0, 1.5, 6.0, 8.0};
    for (auto _ : state) benchmark::DoNotOptimize(population_update(m, centers));
}
BENCHMARK(bm_population_update);

void bm_square_certificate(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(certify_square_k2(0.2, 7.0, 2.5));
}
BENCHMARK(bm_square_certificate);

void bm_containment_oracle(benchmark::State& state) {
    const GaussianMixture1D m = two_component(0.2, 7.0);
    RegionSpec region;
    region.a = 2.5;
    const int grid = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(containment_oracle(m, region, grid));
}
BENCHMARK(bm_containment_oracle)->Arg(11)->Arg(41);

void bm_matching_distance(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const std::size_t k = static_cast<std::size_t>(state.range(1));
    Rng rng(3);
    std::vector<int> a(n), b(n);
    for (auto& v : a) v = static_cast<int>(rng.below(k));
    for (auto& v : b) v = static_cast<int>(rng.below(k));
    for (auto _ : state) benchmark::DoNotOptimize(minimal_matching_distance(a, b, k));
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * n);
}
BENCHMARK(bm_matching_distance)->Args({2000, 4})->Args({2000, 10});

void bm_pruned_init(benchmark::State& state) {
    const ModelSpec model = balanced2d();
    Rng data_rng(4);
    const Dataset data = generate_dataset(model, static_cast<std::size_t>(state.range(0)),
                                          data_rng);
    InitParams params;
    params.L = 20;
    params.p0 = 1.0 / (std::exp(1.0) * 20.0);
    Rng rng(5);
    for (auto _ : state) benchmark::DoNotOptimize(pruned_min_diam(data, 4, params, rng));
}
BENCHMARK(bm_pruned_init)->Arg(100)->Arg(1000);

} // namespace

BENCHMARK_MAIN();
