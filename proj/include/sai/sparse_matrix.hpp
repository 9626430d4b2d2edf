#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sai {

using Index = std::int32_t;

/// Thrown when an input violates an operation's structural contract
/// (dimension mismatch, out-of-range index, unsorted index set).
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A single (row, column, value) entry used while assembling a matrix.
struct Triplet {
    Index row;
    Index col;
    double value;
};

/// Sparse vector with strictly increasing indices and no explicit zeros.
class SparseVector {
public:
    SparseVector() = default;
    explicit SparseVector(Index dim) : dim_(dim) {}

    /// Builds from parallel index/value arrays. Indices must be strictly
    /// increasing; zero values are dropped.
    SparseVector(Index dim, std::span<const Index> indices, std::span<const double> values);

    [[nodiscard]] Index dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t nnz() const noexcept { return indices_.size(); }
    [[nodiscard]] bool empty() const noexcept { return indices_.empty(); }
    [[nodiscard]] std::span<const Index> indices() const noexcept { return indices_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    [[nodiscard]] double norm() const noexcept;
    [[nodiscard]] double at(Index i) const;
    [[nodiscard]] std::vector<double> to_dense() const;

private:
    Index dim_ = 0;
    std::vector<Index> indices_;
    std::vector<double> values_;
};

/// Row permutation stored as a forward map: row `i` of the permuted matrix is
/// row `forward[i]` of the original.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<Index> forward);

    static Permutation identity(Index n);

    [[nodiscard]] Index size() const noexcept { return static_cast<Index>(forward_.size()); }
    [[nodiscard]] Index operator[](Index i) const { return forward_[static_cast<std::size_t>(i)]; }
    [[nodiscard]] std::span<const Index> forward() const noexcept { return forward_; }
    [[nodiscard]] bool is_identity() const noexcept;
    [[nodiscard]] std::vector<Index> inverse() const;

    /// out[i] = v[forward[i]]
    [[nodiscard]] std::vector<double> apply(std::span<const double> v) const;

private:
    std::vector<Index> forward_;
};

/// Immutable compressed sparse column matrix.
///
/// Entries within a column are sorted by row and never exactly zero. A
/// structure-only row index (row -> columns) is built at construction so that
/// row queries do not need a scan over all columns.
class SparseMatrix {
public:
    SparseMatrix() = default;

    /// Canonicalizing constructor: sums duplicates, drops exact zeros, sorts.
    static SparseMatrix from_triplets(Index n_rows, Index n_cols, std::vector<Triplet> triplets);

    /// Takes ownership of CSC arrays. The arrays are validated and compacted
    /// (zeros removed); unsorted or duplicate row indices are rejected.
    static SparseMatrix from_csc(Index n_rows, Index n_cols, std::vector<Index> col_ptr,
                                 std::vector<Index> row_idx, std::vector<double> values);

    static SparseMatrix identity(Index n);
    static SparseMatrix diagonal(std::span<const double> d);

    [[nodiscard]] Index n_rows() const noexcept { return n_rows_; }
    [[nodiscard]] Index n_cols() const noexcept { return n_cols_; }
    [[nodiscard]] Index nnz() const noexcept { return static_cast<Index>(values_.size()); }
    [[nodiscard]] bool is_square() const noexcept { return n_rows_ == n_cols_; }

    [[nodiscard]] std::span<const Index> col_ptr() const noexcept { return col_ptr_; }
    [[nodiscard]] std::span<const Index> row_idx() const noexcept { return row_idx_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    [[nodiscard]] std::span<const Index> col_rows(Index j) const;
    [[nodiscard]] std::span<const double> col_values(Index j) const;
    /// Column indices of the stored entries in row i (ascending).
    [[nodiscard]] std::span<const Index> row_cols(Index i) const;

    /// Stored value at (i, j), or 0 when not stored.
    [[nodiscard]] double at(Index i, Index j) const;
    [[nodiscard]] bool has_entry(Index i, Index j) const;

    /// Maximum absolute column sum.
    [[nodiscard]] double norm_1() const noexcept { return norm_1_; }
    [[nodiscard]] std::span<const Index> row_nnz() const noexcept { return row_nnz_; }
    /// Largest number of stored entries in any row.
    [[nodiscard]] Index max_row_nnz() const noexcept { return max_row_nnz_; }

    [[nodiscard]] std::vector<Triplet> to_triplets() const;
    [[nodiscard]] SparseVector column(Index j) const;

    /// Row-permuted copy: row i of the result is row p[i] of this matrix.
    [[nodiscard]] SparseMatrix permute_rows(const Permutation& p) const;

private:
    void build_indexes();

    Index n_rows_ = 0;
    Index n_cols_ = 0;
    std::vector<Index> col_ptr_{0};
    std::vector<Index> row_idx_;
    std::vector<double> values_;

    std::vector<Index> row_ptr_{0};
    std::vector<Index> row_col_idx_;
    std::vector<Index> row_nnz_;
    Index max_row_nnz_ = 0;
    double norm_1_ = 0.0;
};

/// Column-major dense matrix for the reduced least-squares operands.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(Index rows, Index cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0.0) {}

    [[nodiscard]] Index rows() const noexcept { return rows_; }
    [[nodiscard]] Index cols() const noexcept { return cols_; }

    double& operator()(Index i, Index j) { return data_[static_cast<std::size_t>(j) * static_cast<std::size_t>(rows_) + static_cast<std::size_t>(i)]; }
    double operator()(Index i, Index j) const { return data_[static_cast<std::size_t>(j) * static_cast<std::size_t>(rows_) + static_cast<std::size_t>(i)]; }

    [[nodiscard]] std::span<double> col(Index j) { return {data_.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(rows_), static_cast<std::size_t>(rows_)}; }
    [[nodiscard]] std::span<const double> col(Index j) const { return {data_.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(rows_), static_cast<std::size_t>(rows_)}; }

    [[nodiscard]] double frobenius_norm() const noexcept;

private:
    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<double> data_;
};

/// Dense |rows| x |cols| copy of A(rows, cols). Both index sets must be
/// sorted and in range.
DenseMatrix extract_submatrix(const SparseMatrix& a, std::span<const Index> rows, std::span<const Index> cols);

/// Sorted union of the row indices stored in the listed columns.
std::vector<Index> nonzero_rows_of_columns(const SparseMatrix& a, std::span<const Index> cols);

/// Sorted union of the column indices stored in the listed rows.
std::vector<Index> nonzero_cols_of_rows(const SparseMatrix& a, std::span<const Index> rows);

/// y = A x, accumulated column by column.
std::vector<double> sparse_matvec(const SparseMatrix& a, std::span<const double> x);

/// y = A x into a caller-provided buffer (no allocation).
void sparse_matvec(const SparseMatrix& a, std::span<const double> x, std::span<double> y);

/// Sorted set difference a \ b for sorted inputs.
std::vector<Index> set_difference(std::span<const Index> a, std::span<const Index> b);
/// Sorted union for sorted inputs.
std::vector<Index> set_union(std::span<const Index> a, std::span<const Index> b);

}  // namespace sai
