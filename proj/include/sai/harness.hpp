#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sai/bicgstab.hpp"
#include "sai/config.hpp"
#include "sai/preconditioner.hpp"

namespace sai {

enum class ReportFormat { table, csv, json };

/// A sweep: every matrix x algorithm x parameter point is one run.
struct ExperimentSpec {
    std::vector<std::string> matrices;  ///< file paths or gallery names
    std::vector<Algorithm> algorithms{Algorithm::rsai};
    std::vector<double> epsilons{0.4};
    std::vector<int> cs{3};
    std::vector<int> l_maxes;           ///< empty: 10 for RSAI, the fill cap for SPAI
    std::vector<int> l_as{3};
    bool dropping = true;
    double spai_nnz_cap_ratio = 10.0;
    SolveOptions solve;
    int threads = 0;
    Execution execution = Execution::openmp;
    std::uint64_t seed = 1;

    /// Throws std::invalid_argument on an empty grid or out-of-range value.
    void validate() const;
};

struct RunReport {
    std::string matrix;
    Algorithm algorithm = Algorithm::rsai;
    SaiConfig cfg;
    Index n = 0;
    Index nnz_a = 0;
    Index nnz_m = 0;
    bool permuted = false;   ///< a row permutation was needed for the diagonal
    double spar = 0.0;       ///< nnz(M) / nnz(A)
    double ptime = 0.0;      ///< construction wall time, seconds
    Index n_c = 0;
    SolveStatus status = SolveStatus::max_iters;
    double iterations = 0.0;
    double stime = 0.0;      ///< solve wall time, seconds
    double final_relative_residual = 0.0;
    std::string error;       ///< non-empty when the row failed
};

std::string_view to_string(Algorithm a) noexcept;
Algorithm parse_algorithm(std::string_view s);
ReportFormat parse_format(std::string_view s);

/// The per-point configurations of a sweep for one matrix, in sweep order.
std::vector<std::pair<Algorithm, SaiConfig>> expand_grid(const ExperimentSpec& spec, const SparseMatrix& a);

/// Runs the sweep. Per-row failures are recorded in RunReport::error.
std::vector<RunReport> run_experiment(const ExperimentSpec& spec);

/// Runs one point on an already prepared (zero-free diagonal) matrix.
RunReport run_point(const std::string& name, const SparseMatrix& a, Algorithm algorithm, const SaiConfig& cfg,
                    const ExperimentSpec& spec, Preconditioner* keep = nullptr);

/// Table cell for the iteration count: a number when converged, "†" at the
/// iteration cap, "‡" on stagnation.
std::string iteration_cell(const RunReport& r);

std::string emit_report(const std::vector<RunReport>& reports, ReportFormat format);

/// Loads a file or gallery matrix.
SparseMatrix load_named_matrix(const std::string& name);

}  // namespace sai
