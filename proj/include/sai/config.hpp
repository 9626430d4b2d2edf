#pragma once

#include <cstdint>

#include "sai/sparse_matrix.hpp"

namespace sai {

enum class Algorithm { rsai, spai };

/// Parameters shared by the RSAI and SPAI column builders.
struct SaiConfig {
    double epsilon = 0.4;   ///< residual tolerance per column
    int c = 3;              ///< RSAI: dominant residual indices taken per loop
    int l_max = 10;         ///< maximum loops per column
    bool dropping = true;   ///< RSAI(tol) when set, basic RSAI otherwise
    int l_a = 3;            ///< SPAI: most profitable indices added per loop
    /// SPAI benchmark cap: l_max = floor(ratio * nnz(A) / (l_a * n)).
    double spai_nnz_cap_ratio = 10.0;

    /// Throws std::invalid_argument when a parameter is out of range.
    void validate() const;
};

/// Loop budget for SPAI that caps the fill of M relative to A.
int spai_capped_l_max(const SparseMatrix& a, int l_a, double ratio);

/// Upper bound min{(g*c*l_max + 1)*n, n^2} on nnz(M) for basic RSAI, where g
/// is the largest row count of A.
std::int64_t rsai_nnz_bound(const SparseMatrix& a, const SaiConfig& cfg);

/// Per-column form of the bound after `loops` loops: min{g*c*loops + 1, n}.
std::int64_t column_pattern_bound(const SparseMatrix& a, int c, int loops);

}  // namespace sai
