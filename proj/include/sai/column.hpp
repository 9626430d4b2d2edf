#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "sai/qr.hpp"
#include "sai/sparse_matrix.hpp"

namespace sai {

/// One entry of a column's loop history.
struct LoopRecord {
    int loop = 0;
    double residual_norm = 0.0;
    Index pattern_size = 0;
    Index added = 0;
    Index dropped = 0;
};

/// Working set of one column m_k while it is being built.
struct ColumnState {
    Index k = 0;
    std::vector<Index> J;         ///< pattern of m_k, sorted
    std::vector<Index> I;         ///< rows of the reduced problem, sorted
    std::vector<Index> R;         ///< RSAI exclusion set, sorted
    std::vector<Index> rejected;  ///< columns refused as numerically dependent, sorted
    SparseVector m;               ///< current m_k
    SparseVector residual;        ///< A m_k - e_k
    double residual_norm = 0.0;
    int loop = 0;
    QrFactor factor;
    bool converged = false;
    bool failed = false;
    std::string error;

    std::vector<LoopRecord> history;  ///< entry 0 is the initial solve

    // Last drop pass (RSAI(tol) only).
    int drop_passes = 0;
    double last_drop_threshold = 0.0;
    double min_kept_at_last_drop = std::numeric_limits<double>::infinity();
    Index kept_at_last_drop = 0;
};

/// Scratch arrays of length n reused across columns by one worker. Every
/// routine leaves them in their initial state on return.
class ColumnWorkspace {
public:
    explicit ColumnWorkspace(Index n)
        : local_of_row(static_cast<std::size_t>(n), -1), dense(static_cast<std::size_t>(n), 0.0), mark(static_cast<std::size_t>(n), 0) {}

    std::vector<Index> local_of_row;
    std::vector<double> dense;
    std::vector<char> mark;
};

/// Solves the reduced problem for the pattern in `st.J` from scratch:
/// I = rows of A(:, J) plus k, then QR. Refused columns move to `st.rejected`.
void solve_from_scratch(const SparseMatrix& a, ColumnState& st, ColumnWorkspace& ws);

/// Adds the columns `j_hat` (sorted, disjoint from J) to the pattern, extends
/// I by the new rows and updates the factorization in place. Returns the
/// number of columns accepted.
Index extend_pattern(const SparseMatrix& a, ColumnState& st, std::span<const Index> j_hat, ColumnWorkspace& ws);

/// Drops entries of m with |m_j| <= epsilon / (nnz(m) * norm1A). The entry of
/// largest magnitude (smaller index on ties) is always kept.
SparseVector drop_small(const SparseVector& m, double epsilon, double norm1A);

}  // namespace sai
