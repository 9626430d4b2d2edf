#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sai/sparse_matrix.hpp"

namespace sai {

enum class SolveStatus { converged, max_iters, stagnated, breakdown };

std::string_view to_string(SolveStatus s) noexcept;

struct SolveOptions {
    double rtol = 1e-8;
    int max_iters = 1000;
    /// Stagnation: the best relative residual has not improved by this
    /// relative amount for `stagnation_window` consecutive iterations.
    double stagnation_improvement = 1e-14;
    int stagnation_window = 50;
    double breakdown_threshold = 1e-300;
};

struct SolveOutcome {
    SolveStatus status = SolveStatus::max_iters;
    double iterations = 0.0;               ///< half steps count 0.5
    double final_relative_residual = 0.0;  ///< ||b - A x|| / ||b|| of the returned x
    std::vector<double> solution;          ///< x = M y
    std::vector<double> residual_history;  ///< recurrence residual after each half step

    /// Iteration count rounded up to a whole iteration.
    [[nodiscard]] int whole_iterations() const noexcept;
};

/// Right-preconditioned BiCGStab on A M y = b from y0 = 0; `m` may be empty
/// (no preconditioner). Convergence is declared on the true residual
/// ||b - A M y|| / ||b|| < rtol.
SolveOutcome bicgstab(const SparseMatrix& a, const std::optional<SparseMatrix>& m, std::span<const double> b,
                      const SolveOptions& options = {});

/// b = A * (1, ..., 1)^T
std::vector<double> rhs_for_unit_solution(const SparseMatrix& a);

}  // namespace sai
