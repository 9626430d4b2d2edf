#include "sai/column.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sai {

namespace {

// Scatters the factor's solution into m and recomputes r = A m - e_k on I.
void refresh_solution(const SparseMatrix& a, ColumnState& st, ColumnWorkspace& ws) {
    const auto x = st.factor.solution();
    const auto ids = st.factor.col_ids();
    std::vector<std::size_t> order(ids.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) { return ids[p] < ids[q]; });
    std::vector<Index> idx;
    std::vector<double> val;
    idx.reserve(ids.size());
    val.reserve(ids.size());
    for (std::size_t p : order) {
        idx.push_back(ids[p]);
        val.push_back(x[p]);
    }
    st.m = SparseVector(a.n_rows(), idx, val);

    auto& acc = ws.dense;
    for (std::size_t t = 0; t < idx.size(); ++t) {
        auto rows = a.col_rows(idx[t]);
        auto vals = a.col_values(idx[t]);
        for (std::size_t p = 0; p < rows.size(); ++p) acc[static_cast<std::size_t>(rows[p])] += vals[p] * val[t];
    }
    acc[static_cast<std::size_t>(st.k)] -= 1.0;
    std::vector<double> rv;
    rv.reserve(st.I.size());
    for (Index i : st.I) {
        rv.push_back(acc[static_cast<std::size_t>(i)]);
        acc[static_cast<std::size_t>(i)] = 0.0;
    }
    st.residual = SparseVector(a.n_rows(), st.I, rv);
    st.residual_norm = st.residual.norm();
}

void note_rejected(ColumnState& st, std::vector<Index> rejected) {
    if (rejected.empty()) return;
    std::sort(rejected.begin(), rejected.end());
    st.J = set_difference(st.J, rejected);
    st.rejected = set_union(st.rejected, rejected);
}

}  // namespace

void solve_from_scratch(const SparseMatrix& a, ColumnState& st, ColumnWorkspace& ws) {
    const Index diag[] = {st.k};
    st.I = set_union(nonzero_rows_of_columns(a, st.J), diag);
    const DenseMatrix ak = extract_submatrix(a, st.I, st.J);
    std::vector<double> rhs(st.I.size(), 0.0);
    const auto pos = std::lower_bound(st.I.begin(), st.I.end(), st.k);
    rhs[static_cast<std::size_t>(pos - st.I.begin())] = 1.0;

    auto sol = qr_solve(ak, rhs, st.I, st.J);
    st.factor = std::move(sol.factor);
    note_rejected(st, std::move(sol.rejected));
    refresh_solution(a, st, ws);
}

Index extend_pattern(const SparseMatrix& a, ColumnState& st, std::span<const Index> j_hat, ColumnWorkspace& ws) {
    if (j_hat.empty()) return 0;
    const auto i_hat = set_difference(nonzero_rows_of_columns(a, j_hat), st.I);

    const auto old_rows = st.factor.row_ids();
    const auto m_old = static_cast<Index>(old_rows.size());
    for (Index t = 0; t < m_old; ++t) ws.local_of_row[static_cast<std::size_t>(old_rows[static_cast<std::size_t>(t)])] = t;
    for (std::size_t t = 0; t < i_hat.size(); ++t) ws.local_of_row[static_cast<std::size_t>(i_hat[t])] = m_old + static_cast<Index>(t);

    DenseMatrix new_cols(m_old + static_cast<Index>(i_hat.size()), static_cast<Index>(j_hat.size()));
    for (std::size_t b = 0; b < j_hat.size(); ++b) {
        auto rows = a.col_rows(j_hat[b]);
        auto vals = a.col_values(j_hat[b]);
        for (std::size_t p = 0; p < rows.size(); ++p) {
            new_cols(ws.local_of_row[static_cast<std::size_t>(rows[p])], static_cast<Index>(b)) = vals[p];
        }
    }
    for (Index i : old_rows) ws.local_of_row[static_cast<std::size_t>(i)] = -1;
    for (Index i : i_hat) ws.local_of_row[static_cast<std::size_t>(i)] = -1;

    std::vector<double> rhs_tail(i_hat.size(), 0.0);
    for (std::size_t t = 0; t < i_hat.size(); ++t) rhs_tail[t] = (i_hat[t] == st.k) ? 1.0 : 0.0;

    auto rejected = st.factor.append_columns(new_cols, j_hat, i_hat, rhs_tail);
    const auto accepted = static_cast<Index>(j_hat.size() - rejected.size());
    st.J = set_union(st.J, j_hat);
    st.I = set_union(st.I, i_hat);
    note_rejected(st, std::move(rejected));
    refresh_solution(a, st, ws);
    return accepted;
}

SparseVector drop_small(const SparseVector& m, double epsilon, double norm1A) {
    if (m.empty()) return m;
    const auto idx = m.indices();
    const auto val = m.values();
    const double tol = epsilon / (static_cast<double>(m.nnz()) * norm1A);

    std::size_t largest = 0;
    for (std::size_t t = 1; t < val.size(); ++t) {
        if (std::abs(val[t]) > std::abs(val[largest])) largest = t;
    }
    std::vector<Index> keep_idx;
    std::vector<double> keep_val;
    for (std::size_t t = 0; t < val.size(); ++t) {
        if (t == largest || std::abs(val[t]) > tol) {
            keep_idx.push_back(idx[t]);
            keep_val.push_back(val[t]);
        }
    }
    return SparseVector(m.dim(), keep_idx, keep_val);
}

}  // namespace sai
