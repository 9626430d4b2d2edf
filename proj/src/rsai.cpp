#include "sai/rsai.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sai {

std::vector<Index> select_dominant(const SparseVector& residual, std::span<const Index> exclusion, int c) {
    const auto idx = residual.indices();
    const auto val = residual.values();
    std::vector<std::size_t> eligible;
    eligible.reserve(idx.size());
    for (std::size_t t = 0; t < idx.size(); ++t) {
        if (!std::binary_search(exclusion.begin(), exclusion.end(), idx[t])) eligible.push_back(t);
    }
    const std::size_t take = std::min(eligible.size(), static_cast<std::size_t>(std::max(c, 0)));
    auto larger = [&](std::size_t p, std::size_t q) {
        const double ap = std::abs(val[p]);
        const double aq = std::abs(val[q]);
        return ap != aq ? ap > aq : idx[p] < idx[q];
    };
    std::partial_sort(eligible.begin(), eligible.begin() + static_cast<std::ptrdiff_t>(take), eligible.end(), larger);
    std::vector<Index> out;
    out.reserve(take);
    for (std::size_t t = 0; t < take; ++t) out.push_back(idx[eligible[t]]);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Index> candidate_columns(const SparseMatrix& a, std::span<const Index> rows, std::span<const Index> pattern) {
    return set_difference(nonzero_cols_of_rows(a, rows), pattern);
}

namespace {

// One drop pass; re-solves on the surviving pattern when anything went.
Index apply_drop(const SparseMatrix& a, const SaiConfig& cfg, ColumnState& st, ColumnWorkspace& ws) {
    if (st.m.empty()) return 0;
    const double threshold = cfg.epsilon / (static_cast<double>(st.m.nnz()) * a.norm_1());
    auto kept = drop_small(st.m, cfg.epsilon, a.norm_1());

    ++st.drop_passes;
    st.last_drop_threshold = threshold;
    st.kept_at_last_drop = static_cast<Index>(kept.nnz());
    st.min_kept_at_last_drop = std::numeric_limits<double>::infinity();
    for (double v : kept.values()) st.min_kept_at_last_drop = std::min(st.min_kept_at_last_drop, std::abs(v));

    const auto dropped = static_cast<Index>(st.J.size()) - static_cast<Index>(kept.nnz());
    if (kept.nnz() == st.J.size()) return 0;
    st.J.assign(kept.indices().begin(), kept.indices().end());
    solve_from_scratch(a, st, ws);
    return dropped;
}

}  // namespace

ColumnState rsai_build_column(const SparseMatrix& a, Index k, const SaiConfig& cfg, ColumnWorkspace& ws) {
    cfg.validate();
    if (!a.is_square()) throw ContractError("rsai_build_column: matrix must be square");
    if (k < 0 || k >= a.n_cols()) throw std::out_of_range("rsai_build_column: column index out of range");

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

    while (st.residual_norm > cfg.epsilon && st.loop < cfg.l_max) {
        const auto dominant = select_dominant(st.residual, st.R, cfg.c);
        if (dominant.empty()) break;
        st.R = set_union(st.R, dominant);

        auto j_hat = set_difference(candidate_columns(a, dominant, st.J), st.rejected);
        ++st.loop;
        LoopRecord rec{st.loop, 0.0, 0, 0, 0};
        if (!j_hat.empty()) {
            rec.added = extend_pattern(a, st, j_hat, ws);
            if (cfg.dropping) rec.dropped = apply_drop(a, cfg, st, ws);
        }
        rec.residual_norm = st.residual_norm;
        rec.pattern_size = static_cast<Index>(st.J.size());
        st.history.push_back(rec);
    }
    if (cfg.dropping) {
        const Index dropped = apply_drop(a, cfg, st, ws);
        if (dropped > 0) {
            st.history.push_back({st.loop, st.residual_norm, static_cast<Index>(st.J.size()), 0, dropped});
        }
    }
    st.converged = st.residual_norm <= cfg.epsilon;
    return st;
}

ColumnState rsai_build_column(const SparseMatrix& a, Index k, const SaiConfig& cfg) {
    ColumnWorkspace ws(a.n_rows());
    return rsai_build_column(a, k, cfg, ws);
}

}  // namespace sai
