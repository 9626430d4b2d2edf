#pragma once

#include <span>
#include <vector>

#include "sai/column.hpp"
#include "sai/config.hpp"
#include "sai/sparse_matrix.hpp"

namespace sai {

/// Score of adding column j to the pattern: the norm of the best residual
/// r + mu * A e_j, with mu = -numerator / denom.
struct CandidateScore {
    Index j = 0;
    double rho = 0.0;
    double numerator = 0.0;  ///< r^T A e_j
    double denom = 0.0;      ///< ||A e_j||^2
};

/// Columns of A(L, :) outside the pattern, where L is the residual support.
std::vector<Index> spai_candidates(const SparseMatrix& a, const ColumnState& state);

/// rho_j = ||r + mu_j A e_j|| with mu_j = -(r^T A e_j) / ||A e_j||^2, which equals
/// sqrt(||r||^2 - (r^T A e_j)^2 / ||A e_j||^2).
CandidateScore score_candidate(const SparseMatrix& a, const SparseVector& r, Index j);

/// Grows column k by the `cfg.l_a` candidates of smallest rho per loop.
ColumnState spai_build_column(const SparseMatrix& a, Index k, const SaiConfig& cfg);
ColumnState spai_build_column(const SparseMatrix& a, Index k, const SaiConfig& cfg, ColumnWorkspace& ws);

}  // namespace sai
