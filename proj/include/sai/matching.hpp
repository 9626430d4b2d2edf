#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "sai/sparse_matrix.hpp"

namespace sai {

/// No row-to-column perfect matching exists through the stored entries.
class StructuralSingularityError : public std::runtime_error {
public:
    StructuralSingularityError(const std::string& msg, Index matched)
        : std::runtime_error(msg), matched_(matched) {}

    /// Size of the maximum matching that was found.
    [[nodiscard]] Index matched() const noexcept { return matched_; }

private:
    Index matched_;
};

/// Maximum bipartite matching between columns and rows of `a`.
/// Returns row_of_col, with -1 for unmatched columns.
std::vector<Index> maximum_transversal(const SparseMatrix& a);

struct DiagonalFix {
    Permutation permutation;
    SparseMatrix matrix;
};

/// Finds a row permutation P such that every diagonal entry of P*A is stored.
/// P is the identity when A already has a zero-free diagonal.
DiagonalFix ensure_nonzero_diagonal(const SparseMatrix& a);

/// True when every (k, k) entry is stored.
bool has_zero_free_diagonal(const SparseMatrix& a);

}  // namespace sai
