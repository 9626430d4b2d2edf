#pragma once

#include <span>
#include <vector>

#include "sai/column.hpp"
#include "sai/config.hpp"
#include "sai/sparse_matrix.hpp"

namespace sai {

/// Up to `c` indices of the largest |r(i)| outside `exclusion` (sorted).
/// Equal magnitudes go to the smaller index. Result is sorted ascending.
std::vector<Index> select_dominant(const SparseVector& residual, std::span<const Index> exclusion, int c);

/// Column indices of A(rows, :) that are not yet in `pattern`.
std::vector<Index> candidate_columns(const SparseMatrix& a, std::span<const Index> rows, std::span<const Index> pattern);

/// Builds column k with residual-driven pattern growth. With `cfg.dropping`
/// small entries are removed after every loop and once more at the end.
ColumnState rsai_build_column(const SparseMatrix& a, Index k, const SaiConfig& cfg);
ColumnState rsai_build_column(const SparseMatrix& a, Index k, const SaiConfig& cfg, ColumnWorkspace& ws);

}  // namespace sai
