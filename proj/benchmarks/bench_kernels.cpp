// Throughput comparison of planned execution against the naive CSR loops,
// plus inspection latency. Not wired into ctest; run psc_benchmarks directly.
#include <benchmark/benchmark.h>

#include <vector>

#include "psc/bench.hpp"
#include "psc/executor.hpp"
#include "psc/miner.hpp"
#include "psc/pattern_gen.hpp"

using namespace psc;

namespace {

// every row gathers the same 128 scattered columns: the shared-table case
CsrMatrix gather_pattern(int rows) {
    std::vector<int> cols(128);
    for (int k = 0; k < 128; ++k) cols[k] = 4 * k + (k % 3);
    return scattered_gather(rows, cols);
}

CsrMatrix band_pattern(int rows) { return banded(rows, 8, false); }

void bench_spmv_baseline(benchmark::State& state, const CsrMatrix& a) {
    std::vector<double> x = seeded_vector(a.n_cols, 42);
    std::vector<double> y;
    for (auto _ : state) {
        y = spmv_csr_baseline(a, x);
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(state.iterations() * a.nnz());
}

void bench_spmv_executor(benchmark::State& state, const CsrMatrix& a, int workers) {
    std::vector<double> x = seeded_vector(a.n_cols, 42);
    std::vector<double> y(a.n_rows);
    CodeletPlan plan = inspect(KernelKind::Spmv, a, 8, workers);
    Executor exec(workers);
    for (auto _ : state) {
        run_spmv(plan, a, x, y, exec);
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(state.iterations() * a.nnz());
}

void BM_spmv_band_baseline(benchmark::State& state) {
    bench_spmv_baseline(state, band_pattern(static_cast<int>(state.range(0))));
}

void BM_spmv_band_executor(benchmark::State& state) {
    bench_spmv_executor(state, band_pattern(static_cast<int>(state.range(0))),
                        static_cast<int>(state.range(1)));
}

void BM_spmv_gather_baseline(benchmark::State& state) {
    bench_spmv_baseline(state, gather_pattern(static_cast<int>(state.range(0))));
}

void BM_spmv_gather_executor(benchmark::State& state) {
    bench_spmv_executor(state, gather_pattern(static_cast<int>(state.range(0))),
                        static_cast<int>(state.range(1)));
}

void BM_sptrsv_baseline(benchmark::State& state) {
    TriangularMatrix l =
        lower_triangular(banded(static_cast<int>(state.range(0)), 8, true));
    std::vector<double> b = seeded_vector(l.n(), 42);
    std::vector<double> x;
    for (auto _ : state) {
        x = sptrsv_csr_baseline(l, b);
        benchmark::DoNotOptimize(x.data());
    }
    state.SetItemsProcessed(state.iterations() * l.csr().nnz());
}

void BM_sptrsv_executor(benchmark::State& state) {
    TriangularMatrix l =
        lower_triangular(banded(static_cast<int>(state.range(0)), 8, true));
    std::vector<double> b = seeded_vector(l.n(), 42);
    std::vector<double> x(l.n());
    std::vector<double> acc(l.n());
    int workers = static_cast<int>(state.range(1));
    CodeletPlan plan = inspect(KernelKind::Sptrsv, l.csr(), 8, workers);
    Executor exec(workers);
    for (auto _ : state) {
        run_sptrsv(plan, l, b, x, acc, exec);
        benchmark::DoNotOptimize(x.data());
    }
    state.SetItemsProcessed(state.iterations() * l.csr().nnz());
}

void BM_inspector(benchmark::State& state) {
    CsrMatrix a = random_uniform(static_cast<int>(state.range(0)),
                                 static_cast<int>(state.range(0)), 0.02, 42);
    for (auto _ : state) {
        CodeletPlan plan = inspect(KernelKind::Spmv, a, 8, 1);
        benchmark::DoNotOptimize(plan.partitions.data());
    }
    state.SetItemsProcessed(state.iterations() * a.nnz());
}

}  // namespace

BENCHMARK(BM_spmv_band_baseline)->Arg(1024)->Arg(8192);
BENCHMARK(BM_spmv_band_executor)->Args({1024, 1})->Args({8192, 1})->Args({8192, 4});
BENCHMARK(BM_spmv_gather_baseline)->Arg(1024)->Arg(4096);
BENCHMARK(BM_spmv_gather_executor)->Args({1024, 1})->Args({4096, 1})->Args({4096, 8});
BENCHMARK(BM_sptrsv_baseline)->Arg(4096);
BENCHMARK(BM_sptrsv_executor)->Args({4096, 1});
BENCHMARK(BM_inspector)->Arg(1024)->Arg(4096);

BENCHMARK_MAIN();
