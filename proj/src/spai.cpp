#include "sai/spai.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sai {

namespace {

CandidateScore score_from_parts(Index j, double r_norm_sq, double numerator, double denom) {
    if (denom <= 0.0) throw std::domain_error("score_candidate: column " + std::to_string(j) + " of A is zero");
    CandidateScore s;
    s.j = j;
    s.numerator = numerator;
    s.denom = denom;
    s.rho = std::sqrt(std::max(0.0, r_norm_sq - numerator * numerator / denom));
    return s;
}

double column_norm_sq(const SparseMatrix& a, Index j) {
    double d = 0.0;
    for (double v : a.col_values(j)) d += v * v;
    return d;
}

}  // namespace

std::vector<Index> spai_candidates(const SparseMatrix& a, const ColumnState& state) {
    const auto support = state.residual.indices();
    return set_difference(nonzero_cols_of_rows(a, support), state.J);
}

CandidateScore score_candidate(const SparseMatrix& a, const SparseVector& r, Index j) {
    const auto rows = a.col_rows(j);
    const auto vals = a.col_values(j);
    const auto ri = r.indices();
    const auto rv = r.values();
    double num = 0.0;
    std::size_t p = 0;
    std::size_t q = 0;
    while (p < rows.size() && q < ri.size()) {
        if (rows[p] < ri[q]) {
            ++p;
        } else if (ri[q] < rows[p]) {
            ++q;
        } else {
            num += vals[p] * rv[q];
            ++p;
            ++q;
        }
    }
    const double rn = r.norm();
    auto s = score_from_parts(j, rn * rn, num, column_norm_sq(a, j));

    // ||r + mu A e_j|| summed entry by entry.
    const double mu = -num / s.denom;
    double acc = 0.0;
    p = 0;
    q = 0;
    while (p < rows.size() || q < ri.size()) {
        double e = 0.0;
        if (q == ri.size() || (p < rows.size() && rows[p] < ri[q])) {
            e = mu * vals[p++];
        } else if (p == rows.size() || ri[q] < rows[p]) {
            e = rv[q++];
        } else {
            e = rv[q++] + mu * vals[p++];
        }
        acc += e * e;
    }
    s.rho = std::sqrt(acc);
    return s;
}

ColumnState spai_build_column(const SparseMatrix& a, Index k, const SaiConfig& cfg, ColumnWorkspace& ws) {
    cfg.validate();
    if (!a.is_square()) throw ContractError("spai_build_column: matrix must be square");
    if (k < 0 || k >= a.n_cols()) throw std::out_of_range("spai_build_column: column index out of range");

    ColumnState st;
    st.k = k;
    st.J = {k};
    solve_from_scratch(a, st, ws);
    if (st.J.empty()) {
        st.failed = true;
        st.error = "column " + std::to_string(k) + " of A is structurally zero";
        st.history.push_back({0, st.residual_norm, 0, 0, 0});
        return st;
    }
    st.history.push_back({0, st.residual_norm, static_cast<Index>(st.J.size()), 1, 0});

    std::vector<CandidateScore> scores;
    while (st.residual_norm > cfg.epsilon && st.loop < cfg.l_max) {
        const auto candidates = set_difference(spai_candidates(a, st), st.rejected);
        if (candidates.empty()) break;

        // Scatter r once; every candidate dot product then costs nnz(A e_j).
        auto& r = ws.dense;
        const auto ri = st.residual.indices();
        const auto rv = st.residual.values();
        for (std::size_t t = 0; t < ri.size(); ++t) r[static_cast<std::size_t>(ri[t])] = rv[t];
        const double r_norm_sq = st.residual_norm * st.residual_norm;
        scores.clear();
        for (Index j : candidates) {
            double num = 0.0;
            auto rows = a.col_rows(j);
            auto vals = a.col_values(j);
            for (std::size_t p = 0; p < rows.size(); ++p) num += vals[p] * r[static_cast<std::size_t>(rows[p])];
            auto sc = score_from_parts(j, r_norm_sq, num, column_norm_sq(a, j));
            if (sc.rho * sc.rho < 0.25 * r_norm_sq) sc = score_candidate(a, st.residual, j);
            scores.push_back(sc);
        }
        for (Index i : ri) r[static_cast<std::size_t>(i)] = 0.0;

        const std::size_t take = std::min(scores.size(), static_cast<std::size_t>(cfg.l_a));
        std::partial_sort(scores.begin(), scores.begin() + static_cast<std::ptrdiff_t>(take), scores.end(),
                          [](const CandidateScore& x, const CandidateScore& y) { return x.rho != y.rho ? x.rho < y.rho : x.j < y.j; });
        std::vector<Index> chosen;
        chosen.reserve(take);
        for (std::size_t t = 0; t < take; ++t) chosen.push_back(scores[t].j);
        std::sort(chosen.begin(), chosen.end());

        ++st.loop;
        const Index added = extend_pattern(a, st, chosen, ws);
        st.history.push_back({st.loop, st.residual_norm, static_cast<Index>(st.J.size()), added, 0});
    }
    st.converged = st.residual_norm <= cfg.epsilon;
    return st;
}

ColumnState spai_build_column(const SparseMatrix& a, Index k, const SaiConfig& cfg) {
    ColumnWorkspace ws(a.n_rows());
    return spai_build_column(a, k, cfg, ws);
}

}  // namespace sai
