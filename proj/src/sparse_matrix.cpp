#include "sai/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sai {

namespace {

void check_sorted_in_range(std::span<const Index> ids, Index bound, const char* what) {
    for (std::size_t t = 0; t < ids.size(); ++t) {
        if (ids[t] < 0 || ids[t] >= bound) {
            throw std::out_of_range(std::string(what) + " index " + std::to_string(ids[t]) +
                                    " out of range [0, " + std::to_string(bound) + ")");
        }
        if (t > 0 && ids[t] <= ids[t - 1]) {
            throw ContractError(std::string(what) + " index set must be strictly increasing");
        }
    }
}

std::vector<Index> sorted_unique(std::vector<Index> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// SparseVector

SparseVector::SparseVector(Index dim, std::span<const Index> indices, std::span<const double> values)
    : dim_(dim) {
    if (indices.size() != values.size()) {
        throw ContractError("SparseVector: index and value arrays differ in length");
    }
    indices_.reserve(indices.size());
    values_.reserve(values.size());
    for (std::size_t t = 0; t < indices.size(); ++t) {
        if (indices[t] < 0 || indices[t] >= dim) {
            throw std::out_of_range("SparseVector: index out of range");
        }
        if (t > 0 && indices[t] <= indices[t - 1]) {
            throw ContractError("SparseVector: indices must be strictly increasing");
        }
        if (values[t] != 0.0) {
            indices_.push_back(indices[t]);
            values_.push_back(values[t]);
        }
    }
}

double SparseVector::norm() const noexcept {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return std::sqrt(s);
}

double SparseVector::at(Index i) const {
    auto it = std::lower_bound(indices_.begin(), indices_.end(), i);
    if (it == indices_.end() || *it != i) return 0.0;
    return values_[static_cast<std::size_t>(it - indices_.begin())];
}

std::vector<double> SparseVector::to_dense() const {
    std::vector<double> out(static_cast<std::size_t>(dim_), 0.0);
    for (std::size_t t = 0; t < indices_.size(); ++t) out[static_cast<std::size_t>(indices_[t])] = values_[t];
    return out;
}

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::vector<Index> forward) : forward_(std::move(forward)) {
    std::vector<char> seen(forward_.size(), 0);
    for (Index v : forward_) {
        if (v < 0 || static_cast<std::size_t>(v) >= forward_.size() || seen[static_cast<std::size_t>(v)]) {
            throw ContractError("Permutation: forward map is not a bijection");
        }
        seen[static_cast<std::size_t>(v)] = 1;
    }
}

Permutation Permutation::identity(Index n) {
    std::vector<Index> f(static_cast<std::size_t>(n));
    std::iota(f.begin(), f.end(), Index{0});
    return Permutation(std::move(f));
}

bool Permutation::is_identity() const noexcept {
    for (std::size_t i = 0; i < forward_.size(); ++i) {
        if (forward_[i] != static_cast<Index>(i)) return false;
    }
    return true;
}

std::vector<Index> Permutation::inverse() const {
    std::vector<Index> inv(forward_.size());
    for (std::size_t i = 0; i < forward_.size(); ++i) inv[static_cast<std::size_t>(forward_[i])] = static_cast<Index>(i);
    return inv;
}

std::vector<double> Permutation::apply(std::span<const double> v) const {
    if (v.size() != forward_.size()) throw ContractError("Permutation::apply: dimension mismatch");
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < forward_.size(); ++i) out[i] = v[static_cast<std::size_t>(forward_[i])];
    return out;
}

// ---------------------------------------------------------------------------
// SparseMatrix

SparseMatrix SparseMatrix::from_triplets(Index n_rows, Index n_cols, std::vector<Triplet> triplets) {
    if (n_rows < 0 || n_cols < 0) throw ContractError("SparseMatrix: negative dimension");
    for (const auto& t : triplets) {
        if (t.row < 0 || t.row >= n_rows || t.col < 0 || t.col >= n_cols) {
            throw std::out_of_range("SparseMatrix: triplet (" + std::to_string(t.row) + ", " +
                                    std::to_string(t.col) + ") out of range");
        }
    }
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.col != b.col ? a.col < b.col : a.row < b.row;
    });

    SparseMatrix m;
    m.n_rows_ = n_rows;
    m.n_cols_ = n_cols;
    m.col_ptr_.assign(static_cast<std::size_t>(n_cols) + 1, 0);
    m.row_idx_.reserve(triplets.size());
    m.values_.reserve(triplets.size());

    std::size_t t = 0;
    for (Index j = 0; j < n_cols; ++j) {
        while (t < triplets.size() && triplets[t].col == j) {
            const Index i = triplets[t].row;
            double sum = 0.0;
            while (t < triplets.size() && triplets[t].col == j && triplets[t].row == i) {
                sum += triplets[t].value;
                ++t;
            }
            if (sum != 0.0) {
                m.row_idx_.push_back(i);
                m.values_.push_back(sum);
            }
        }
        m.col_ptr_[static_cast<std::size_t>(j) + 1] = static_cast<Index>(m.values_.size());
    }
    m.build_indexes();
    return m;
}

SparseMatrix SparseMatrix::from_csc(Index n_rows, Index n_cols, std::vector<Index> col_ptr,
                                    std::vector<Index> row_idx, std::vector<double> values) {
    if (n_rows < 0 || n_cols < 0) throw ContractError("SparseMatrix: negative dimension");
    if (col_ptr.size() != static_cast<std::size_t>(n_cols) + 1 || col_ptr.front() != 0 ||
        static_cast<std::size_t>(col_ptr.back()) != row_idx.size() || row_idx.size() != values.size()) {
        throw ContractError("SparseMatrix: inconsistent CSC array lengths");
    }
    SparseMatrix m;
    m.n_rows_ = n_rows;
    m.n_cols_ = n_cols;
    m.col_ptr_.assign(static_cast<std::size_t>(n_cols) + 1, 0);
    m.row_idx_.reserve(row_idx.size());
    m.values_.reserve(values.size());
    for (Index j = 0; j < n_cols; ++j) {
        const Index begin = col_ptr[static_cast<std::size_t>(j)];
        const Index end = col_ptr[static_cast<std::size_t>(j) + 1];
        if (end < begin) throw ContractError("SparseMatrix: col_ptr must be non-decreasing");
        for (Index p = begin; p < end; ++p) {
            const Index i = row_idx[static_cast<std::size_t>(p)];
            if (i < 0 || i >= n_rows) throw std::out_of_range("SparseMatrix: row index out of range");
            if (p > begin && i <= row_idx[static_cast<std::size_t>(p) - 1]) {
                throw ContractError("SparseMatrix: row indices must be strictly increasing within a column");
            }
            if (values[static_cast<std::size_t>(p)] != 0.0) {
                m.row_idx_.push_back(i);
                m.values_.push_back(values[static_cast<std::size_t>(p)]);
            }
        }
        m.col_ptr_[static_cast<std::size_t>(j) + 1] = static_cast<Index>(m.values_.size());
    }
    m.build_indexes();
    return m;
}

SparseMatrix SparseMatrix::identity(Index n) {
    std::vector<double> ones(static_cast<std::size_t>(n), 1.0);
    return diagonal(ones);
}

SparseMatrix SparseMatrix::diagonal(std::span<const double> d) {
    std::vector<Triplet> t;
    t.reserve(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) t.push_back({static_cast<Index>(i), static_cast<Index>(i), d[i]});
    return from_triplets(static_cast<Index>(d.size()), static_cast<Index>(d.size()), std::move(t));
}

void SparseMatrix::build_indexes() {
    row_nnz_.assign(static_cast<std::size_t>(n_rows_), 0);
    for (Index i : row_idx_) ++row_nnz_[static_cast<std::size_t>(i)];
    max_row_nnz_ = row_nnz_.empty() ? 0 : *std::max_element(row_nnz_.begin(), row_nnz_.end());

    row_ptr_.assign(static_cast<std::size_t>(n_rows_) + 1, 0);
    for (Index i = 0; i < n_rows_; ++i) {
        row_ptr_[static_cast<std::size_t>(i) + 1] = row_ptr_[static_cast<std::size_t>(i)] + row_nnz_[static_cast<std::size_t>(i)];
    }
    row_col_idx_.resize(row_idx_.size());
    std::vector<Index> next(row_ptr_.begin(), row_ptr_.end() - 1);
    // Walking columns in order leaves every row's column list sorted.
    for (Index j = 0; j < n_cols_; ++j) {
        for (Index p = col_ptr_[static_cast<std::size_t>(j)]; p < col_ptr_[static_cast<std::size_t>(j) + 1]; ++p) {
            row_col_idx_[static_cast<std::size_t>(next[static_cast<std::size_t>(row_idx_[static_cast<std::size_t>(p)])]++)] = j;
        }
    }

    norm_1_ = 0.0;
    for (Index j = 0; j < n_cols_; ++j) {
        double s = 0.0;
        for (double v : col_values(j)) s += std::abs(v);
        norm_1_ = std::max(norm_1_, s);
    }
}

std::span<const Index> SparseMatrix::col_rows(Index j) const {
    if (j < 0 || j >= n_cols_) throw std::out_of_range("SparseMatrix: column index out of range");
    const auto b = static_cast<std::size_t>(col_ptr_[static_cast<std::size_t>(j)]);
    const auto e = static_cast<std::size_t>(col_ptr_[static_cast<std::size_t>(j) + 1]);
    return std::span<const Index>(row_idx_).subspan(b, e - b);
}

std::span<const double> SparseMatrix::col_values(Index j) const {
    if (j < 0 || j >= n_cols_) throw std::out_of_range("SparseMatrix: column index out of range");
    const auto b = static_cast<std::size_t>(col_ptr_[static_cast<std::size_t>(j)]);
    const auto e = static_cast<std::size_t>(col_ptr_[static_cast<std::size_t>(j) + 1]);
    return std::span<const double>(values_).subspan(b, e - b);
}

std::span<const Index> SparseMatrix::row_cols(Index i) const {
    if (i < 0 || i >= n_rows_) throw std::out_of_range("SparseMatrix: row index out of range");
    const auto b = static_cast<std::size_t>(row_ptr_[static_cast<std::size_t>(i)]);
    const auto e = static_cast<std::size_t>(row_ptr_[static_cast<std::size_t>(i) + 1]);
    return std::span<const Index>(row_col_idx_).subspan(b, e - b);
}

double SparseMatrix::at(Index i, Index j) const {
    auto rows = col_rows(j);
    auto it = std::lower_bound(rows.begin(), rows.end(), i);
    if (it == rows.end() || *it != i) return 0.0;
    return col_values(j)[static_cast<std::size_t>(it - rows.begin())];
}

bool SparseMatrix::has_entry(Index i, Index j) const {
    auto rows = col_rows(j);
    return std::binary_search(rows.begin(), rows.end(), i);
}

std::vector<Triplet> SparseMatrix::to_triplets() const {
    std::vector<Triplet> out;
    out.reserve(values_.size());
    for (Index j = 0; j < n_cols_; ++j) {
        auto rows = col_rows(j);
        auto vals = col_values(j);
        for (std::size_t t = 0; t < rows.size(); ++t) out.push_back({rows[t], j, vals[t]});
    }
    return out;
}

SparseVector SparseMatrix::column(Index j) const {
    return SparseVector(n_rows_, col_rows(j), col_values(j));
}

SparseMatrix SparseMatrix::permute_rows(const Permutation& p) const {
    if (p.size() != n_rows_) throw ContractError("permute_rows: permutation size mismatch");
    const auto inv = p.inverse();
    auto t = to_triplets();
    for (auto& e : t) e.row = inv[static_cast<std::size_t>(e.row)];
    return from_triplets(n_rows_, n_cols_, std::move(t));
}

// ---------------------------------------------------------------------------
// DenseMatrix

double DenseMatrix::frobenius_norm() const noexcept {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Structural queries and kernels

DenseMatrix extract_submatrix(const SparseMatrix& a, std::span<const Index> rows, std::span<const Index> cols) {
    check_sorted_in_range(rows, a.n_rows(), "row");
    check_sorted_in_range(cols, a.n_cols(), "column");
    DenseMatrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
    for (std::size_t b = 0; b < cols.size(); ++b) {
        auto col_rows = a.col_rows(cols[b]);
        auto col_vals = a.col_values(cols[b]);
        // Merge two sorted lists.
        std::size_t p = 0;
        std::size_t q = 0;
        while (p < col_rows.size() && q < rows.size()) {
            if (col_rows[p] < rows[q]) {
                ++p;
            } else if (rows[q] < col_rows[p]) {
                ++q;
            } else {
                out(static_cast<Index>(q), static_cast<Index>(b)) = col_vals[p];
                ++p;
                ++q;
            }
        }
    }
    return out;
}

std::vector<Index> nonzero_rows_of_columns(const SparseMatrix& a, std::span<const Index> cols) {
    std::vector<Index> out;
    for (Index j : cols) {
        if (j < 0 || j >= a.n_cols()) throw std::out_of_range("nonzero_rows_of_columns: column out of range");
        auto r = a.col_rows(j);
        out.insert(out.end(), r.begin(), r.end());
    }
    return sorted_unique(std::move(out));
}

std::vector<Index> nonzero_cols_of_rows(const SparseMatrix& a, std::span<const Index> rows) {
    std::vector<Index> out;
    for (Index i : rows) {
        if (i < 0 || i >= a.n_rows()) throw std::out_of_range("nonzero_cols_of_rows: row out of range");
        auto c = a.row_cols(i);
        out.insert(out.end(), c.begin(), c.end());
    }
    return sorted_unique(std::move(out));
}

void sparse_matvec(const SparseMatrix& a, std::span<const double> x, std::span<double> y) {
    if (x.size() != static_cast<std::size_t>(a.n_cols()) || y.size() != static_cast<std::size_t>(a.n_rows())) {
        throw ContractError("sparse_matvec: dimension mismatch");
    }
    std::fill(y.begin(), y.end(), 0.0);
    const auto cp = a.col_ptr();
    const auto ri = a.row_idx();
    const auto va = a.values();
    for (Index j = 0; j < a.n_cols(); ++j) {
        const double xj = x[static_cast<std::size_t>(j)];
        if (xj == 0.0) continue;
        for (Index p = cp[static_cast<std::size_t>(j)]; p < cp[static_cast<std::size_t>(j) + 1]; ++p) {
            y[static_cast<std::size_t>(ri[static_cast<std::size_t>(p)])] += va[static_cast<std::size_t>(p)] * xj;
        }
    }
}

std::vector<double> sparse_matvec(const SparseMatrix& a, std::span<const double> x) {
    std::vector<double> y(static_cast<std::size_t>(a.n_rows()));
    sparse_matvec(a, x, y);
    return y;
}

std::vector<Index> set_difference(std::span<const Index> a, std::span<const Index> b) {
    std::vector<Index> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<Index> set_union(std::span<const Index> a, std::span<const Index> b) {
    std::vector<Index> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace sai
