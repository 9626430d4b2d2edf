#pragma once

#include <cstdint>
#include <string>

#include "sai/sparse_matrix.hpp"

namespace sai::gallery {

/// Five-point upwind convection-diffusion operator on a grid x grid mesh
/// with Dirichlet boundaries; nonsymmetric for nonzero `peclet`.
SparseMatrix convection_diffusion(Index grid, double peclet);

/// n x n matrix with a stored diagonal and about `per_col` random
/// off-diagonal entries per column. The diagonal is scaled by `dominance`
/// times the column's off-diagonal absolute sum (plus 1), so dominance > 1
/// gives a column diagonally dominant, nonsingular matrix.
SparseMatrix random_sparse(Index n, int per_col, double dominance, std::uint64_t seed);

/// Upper bidiagonal matrix with unit diagonal and -1 on the superdiagonal.
SparseMatrix unit_bidiagonal(Index n);

/// Resolves "gallery:convdiff:<grid>[:<peclet>]" and
/// "gallery:random:<n>[:<per_col>[:<seed>]]"; anything else is a file path.
bool is_gallery_name(const std::string& name);
SparseMatrix from_name(const std::string& name);

}  // namespace sai::gallery
