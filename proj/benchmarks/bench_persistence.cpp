// Microbenchmarks for the two degree-0 persistence paths and the scan
// building blocks. The union-find path is the near-linear route the scans
// rely on; the reduction path is the general-degree fallback.

#include <benchmark/benchmark.h>

#include "flatscan/filtration.hpp"
#include "flatscan/grassmann.hpp"
#include "flatscan/persistence.hpp"
#include "flatscan/shape.hpp"

using namespace flatscan;

namespace {

Flat through_line() {
    Eigen::VectorXd d(2);
    d << 1, 0.37;
    return line_flat(Eigen::VectorXd::Zero(2), d);
}

Shape ring_of(int size) {
    return make_ring_grid(size, 0.375 * size, 0.15 * size);
}

}  // namespace

static void BM_pd0_union_find(benchmark::State& state) {
    const Shape ring = ring_of(static_cast<int>(state.range(0)));
    const FiltrationValues filt = flat_filtration(ring, through_line());
    for (auto _ : state) {
        benchmark::DoNotOptimize(pd0_union_find(ring, filt));
    }
    state.SetComplexityN(ring.cell_count());
}
BENCHMARK(BM_pd0_union_find)->Arg(32)->Arg(64)->Arg(128)->Arg(256)->Complexity();

static void BM_pd_reduction_degree0(benchmark::State& state) {
    const Shape ring = ring_of(static_cast<int>(state.range(0)));
    const FiltrationValues filt = flat_filtration(ring, through_line());
    for (auto _ : state) {
        benchmark::DoNotOptimize(pd_reduction(ring, filt, 0));
    }
    state.SetComplexityN(ring.cell_count());
}
BENCHMARK(BM_pd_reduction_degree0)->Arg(32)->Arg(64)->Arg(128)->Complexity();

static void BM_flat_filtration(benchmark::State& state) {
    const Shape ring = ring_of(static_cast<int>(state.range(0)));
    const Flat line = through_line();
    for (auto _ : state) {
        benchmark::DoNotOptimize(flat_filtration(ring, line));
    }
}
BENCHMARK(BM_flat_filtration)->Arg(64)->Arg(256);

static void BM_principal_angles(benchmark::State& state) {
    const int n = 16, m = 4;
    const auto flats = sample_flats(m, n, 2, 1.0, 7);
    const Flat a = deaffine(flats[0]);
    const Flat b = deaffine(flats[1]);
    for (auto _ : state) {
        benchmark::DoNotOptimize(principal_angles(a, b));
    }
}
BENCHMARK(BM_principal_angles);

static void BM_affine_distance(benchmark::State& state) {
    const auto flats = sample_flats(2, 8, 2, 5.0, 11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(affine_distance(flats[0], flats[1]));
    }
}
BENCHMARK(BM_affine_distance);

BENCHMARK_MAIN();
