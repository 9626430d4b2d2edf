#include "sai/preconditioner.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sai/rsai.hpp"
#include "sai/spai.hpp"

namespace sai {

ColumnState build_column(const SparseMatrix& a, Index k, const SaiConfig& cfg, Algorithm algorithm, ColumnWorkspace& ws) {
    try {
        return algorithm == Algorithm::rsai ? rsai_build_column(a, k, cfg, ws) : spai_build_column(a, k, cfg, ws);
    } catch (const std::exception& e) {
        // A failed column leaves M with an empty column and counts into n_c.
        ColumnState st;
        st.k = k;
        st.failed = true;
        st.error = e.what();
        st.m = SparseVector(a.n_rows());
        st.residual_norm = 1.0;
        std::fill(ws.local_of_row.begin(), ws.local_of_row.end(), -1);
        std::fill(ws.dense.begin(), ws.dense.end(), 0.0);
        std::fill(ws.mark.begin(), ws.mark.end(), 0);
        return st;
    }
}

namespace {

void build_serial(const SparseMatrix& a, const SaiConfig& cfg, Algorithm algorithm, std::vector<ColumnState>& out) {
    ColumnWorkspace ws(a.n_rows());
    for (Index k = 0; k < a.n_cols(); ++k) out[static_cast<std::size_t>(k)] = build_column(a, k, cfg, algorithm, ws);
}

void build_openmp(const SparseMatrix& a, const SaiConfig& cfg, Algorithm algorithm, int threads, std::vector<ColumnState>& out) {
#ifdef _OPENMP
    const int n_threads = threads > 0 ? threads : omp_get_max_threads();
    const Index n = a.n_cols();
#pragma omp parallel num_threads(n_threads) default(none) shared(a, cfg, algorithm, out, n)
    {
        ColumnWorkspace ws(a.n_rows());
#pragma omp for schedule(dynamic, 4)
        for (Index k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = build_column(a, k, cfg, algorithm, ws);
    }
#else
    (void)threads;
    build_serial(a, cfg, algorithm, out);
#endif
}

}  // namespace

Preconditioner build_preconditioner(const SparseMatrix& a, const SaiConfig& cfg, Algorithm algorithm, const BuildOptions& options) {
    cfg.validate();
    if (!a.is_square()) throw ContractError("build_preconditioner: matrix must be square");
    const Index n = a.n_cols();

    const auto start = std::chrono::steady_clock::now();
    std::vector<ColumnState> states(static_cast<std::size_t>(n));
    if (options.execution == Execution::serial) {
        build_serial(a, cfg, algorithm, states);
    } else {
        build_openmp(a, cfg, algorithm, options.threads, states);
    }

    Preconditioner p;
    p.residual_norms.resize(static_cast<std::size_t>(n));
    p.loops.resize(static_cast<std::size_t>(n));
    std::vector<Index> col_ptr(static_cast<std::size_t>(n) + 1, 0);
    for (Index k = 0; k < n; ++k) {
        col_ptr[static_cast<std::size_t>(k) + 1] = col_ptr[static_cast<std::size_t>(k)] + static_cast<Index>(states[static_cast<std::size_t>(k)].m.nnz());
    }
    std::vector<Index> row_idx;
    std::vector<double> values;
    row_idx.reserve(static_cast<std::size_t>(col_ptr.back()));
    values.reserve(static_cast<std::size_t>(col_ptr.back()));
    for (Index k = 0; k < n; ++k) {
        const auto& st = states[static_cast<std::size_t>(k)];
        row_idx.insert(row_idx.end(), st.m.indices().begin(), st.m.indices().end());
        values.insert(values.end(), st.m.values().begin(), st.m.values().end());
        p.residual_norms[static_cast<std::size_t>(k)] = st.residual_norm;
        p.loops[static_cast<std::size_t>(k)] = st.loop;
        p.total_loops += st.loop;
        if (st.failed) ++p.failed_columns;
        if (st.failed || st.residual_norm > cfg.epsilon) ++p.n_c;
    }
    if (n > 0 && p.failed_columns == n) {
        throw std::runtime_error("build_preconditioner: every column failed (first error: " + states.front().error + ")");
    }
    p.m = SparseMatrix::from_csc(n, n, std::move(col_ptr), std::move(row_idx), std::move(values));
    p.build_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (options.keep_columns) p.columns = std::move(states);
    return p;
}

}  // namespace sai
