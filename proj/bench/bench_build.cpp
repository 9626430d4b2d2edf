// Serial reference vs OpenMP column construction, plus the solve phase.
//
//   ./sai-bench --benchmark_filter=Build
//   SAI_BENCH_MATRIX=/path/to/orsirr_2.mtx ./sai-bench

#include <cstdlib>
#include <optional>
#include <string>

#include <benchmark/benchmark.h>

#include "sai/bicgstab.hpp"
#include "sai/gallery.hpp"
#include "sai/harness.hpp"
#include "sai/matching.hpp"
#include "sai/preconditioner.hpp"

namespace {

const sai::SparseMatrix& bench_matrix() {
    static const sai::SparseMatrix a = [] {
        const char* path = std::getenv("SAI_BENCH_MATRIX");
        auto m = path ? sai::load_named_matrix(path) : sai::gallery::convection_diffusion(40, 40.0);
        return sai::ensure_nonzero_diagonal(m).matrix;
    }();
    return a;
}

void run_build(benchmark::State& state, sai::Algorithm alg, sai::Execution exec) {
    const auto& a = bench_matrix();
    sai::SaiConfig cfg;
    cfg.epsilon = 0.3;
    if (alg == sai::Algorithm::spai) cfg.l_max = sai::spai_capped_l_max(a, cfg.l_a, cfg.spai_nnz_cap_ratio);
    sai::BuildOptions opts;
    opts.execution = exec;
    opts.threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto p = sai::build_preconditioner(a, cfg, alg, opts);
        benchmark::DoNotOptimize(p.m.nnz());
    }
    state.counters["n"] = a.n_cols();
    state.counters["cols/s"] = benchmark::Counter(static_cast<double>(a.n_cols()), benchmark::Counter::kIsIterationInvariantRate);
}

void BM_BuildRsaiSerial(benchmark::State& s) { run_build(s, sai::Algorithm::rsai, sai::Execution::serial); }
void BM_BuildRsaiOpenMP(benchmark::State& s) { run_build(s, sai::Algorithm::rsai, sai::Execution::openmp); }
void BM_BuildSpaiSerial(benchmark::State& s) { run_build(s, sai::Algorithm::spai, sai::Execution::serial); }
void BM_BuildSpaiOpenMP(benchmark::State& s) { run_build(s, sai::Algorithm::spai, sai::Execution::openmp); }

void BM_Bicgstab(benchmark::State& state) {
    const auto& a = bench_matrix();
    sai::SaiConfig cfg;
    cfg.epsilon = 0.3;
    std::optional<sai::SparseMatrix> m;
    if (state.range(0)) m = sai::build_preconditioner(a, cfg, sai::Algorithm::rsai).m;
    const auto b = sai::rhs_for_unit_solution(a);
    double iters = 0;
    for (auto _ : state) {
        auto out = sai::bicgstab(a, m, b);
        iters = out.iterations;
        benchmark::DoNotOptimize(out.solution.data());
    }
    state.counters["iter"] = iters;
}

}  // namespace

BENCHMARK(BM_BuildRsaiSerial)->Arg(1)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildRsaiOpenMP)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildSpaiSerial)->Arg(1)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildSpaiOpenMP)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Bicgstab)->Arg(0)->Arg(1)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
