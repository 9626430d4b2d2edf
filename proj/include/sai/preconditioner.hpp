#pragma once

#include <vector>

#include "sai/column.hpp"
#include "sai/config.hpp"
#include "sai/sparse_matrix.hpp"

namespace sai {

enum class Execution {
    serial,  ///< reference loop over columns
    openmp,  ///< columns distributed over OpenMP threads
};

struct BuildOptions {
    Execution execution = Execution::openmp;
    int threads = 0;            ///< 0 uses the OpenMP default
    bool keep_columns = false;  ///< retain every ColumnState in the result
};

/// Sparse approximate inverse M with per-column diagnostics.
struct Preconditioner {
    SparseMatrix m;
    Index n_c = 0;  ///< columns with residual norm above epsilon
    Index failed_columns = 0;
    std::vector<double> residual_norms;
    std::vector<int> loops;
    std::int64_t total_loops = 0;
    double build_seconds = 0.0;
    std::vector<ColumnState> columns;  ///< filled when keep_columns is set
};

/// Builds every column independently and assembles M. The result does not
/// depend on the execution mode or thread count. Throws when every column fails.
Preconditioner build_preconditioner(const SparseMatrix& a, const SaiConfig& cfg, Algorithm algorithm,
                                    const BuildOptions& options = {});

/// Builds a single column with the selected algorithm.
ColumnState build_column(const SparseMatrix& a, Index k, const SaiConfig& cfg, Algorithm algorithm, ColumnWorkspace& ws);

}  // namespace sai
