#pragma once

#include <span>
#include <vector>

#include "sai/sparse_matrix.hpp"

namespace sai {

/// Householder QR of a tall reduced matrix A(I, J) together with Q^T b,
/// extensible by appending columns and rows.
///
/// Rows and columns are kept in insertion order. Every appended row is assumed
/// to be zero in all previously factored columns, which holds for the reduced
/// problems of a sparse approximate inverse: a new row enters I only through a
/// newly added column. Reflector j acts on local rows [j, j + length_j), so rows
/// appended later are untouched by it and the factorization stays valid.
///
/// R carries a nonnegative diagonal. A candidate column whose new diagonal
/// falls below `rank_tol * ||A(I, J)||_F` is rejected and left out.
class QrFactor {
public:
    static constexpr double default_rank_tol = 1e-12;

    QrFactor() = default;

    /// Factors `a` (rows >= 0, any cols) and applies Q^T to `rhs`.
    /// `row_ids` / `col_ids` label the local rows and columns; when empty they
    /// default to 0..m-1 and 0..k-1.
    static QrFactor factor(const DenseMatrix& a, std::span<const double> rhs,
                           std::span<const Index> row_ids = {}, std::span<const Index> col_ids = {},
                           double rank_tol = default_rank_tol);

    /// Appends `new_cols` (one column per entry of `new_col_ids`) whose rows are
    /// the existing local rows followed by `new_row_ids`. `rhs_tail` holds the
    /// right-hand side on the new rows. Returns the column ids that were
    /// rejected as numerically dependent.
    std::vector<Index> append_columns(const DenseMatrix& new_cols, std::span<const Index> new_col_ids,
                                      std::span<const Index> new_row_ids, std::span<const double> rhs_tail);

    [[nodiscard]] Index rows() const noexcept { return static_cast<Index>(row_ids_.size()); }
    [[nodiscard]] Index cols() const noexcept { return static_cast<Index>(col_ids_.size()); }
    [[nodiscard]] std::span<const Index> row_ids() const noexcept { return row_ids_; }
    /// Accepted columns in factorization order.
    [[nodiscard]] std::span<const Index> col_ids() const noexcept { return col_ids_; }

    /// Least-squares solution, ordered like col_ids().
    [[nodiscard]] std::vector<double> solution() const;
    /// ||A x - b|| for the least-squares solution.
    [[nodiscard]] double residual_norm() const noexcept;
    /// Upper-triangular R (cols x cols).
    [[nodiscard]] DenseMatrix r() const;
    /// Q * [R; 0], which reproduces A(I, J) for the accepted columns.
    [[nodiscard]] DenseMatrix reconstruct() const;
    [[nodiscard]] double frobenius_norm() const noexcept;

private:
    struct Reflector {
        std::vector<double> v;  // v[0] = 1, acts on rows [offset, offset + v.size())
        double tau = 0.0;
        double sign = 1.0;      // applied to the pivot row after the reflection
    };

    void apply_qt(std::span<double> x) const;
    // Reduces x (already multiplied by Q^T) below row `cols()`; returns false
    // when the column is numerically dependent.
    bool try_accept(std::vector<double> x, Index col_id);

    std::vector<Index> row_ids_;
    std::vector<Index> col_ids_;
    std::vector<Reflector> reflectors_;
    std::vector<std::vector<double>> r_cols_;  // column j holds R(0..j, j)
    std::vector<double> qtb_;
    double frob_sq_ = 0.0;
    double rank_tol_ = default_rank_tol;
};

struct LsSolution {
    std::vector<double> solution;  // ordered like factor.col_ids()
    double residual_norm = 0.0;
    QrFactor factor;
    std::vector<Index> rejected;   // column ids dropped as rank deficient
};

/// Solves min ||A x - rhs|| by Householder QR.
LsSolution qr_solve(const DenseMatrix& a, std::span<const double> rhs,
                    std::span<const Index> row_ids = {}, std::span<const Index> col_ids = {});

/// Extends an existing factorization and re-solves. Equivalent (to rounding)
/// to qr_solve on the enlarged matrix.
LsSolution qr_append_columns(QrFactor factor, const DenseMatrix& new_cols, std::span<const Index> new_col_ids,
                             std::span<const Index> new_row_ids, std::span<const double> rhs_tail);

}  // namespace sai
