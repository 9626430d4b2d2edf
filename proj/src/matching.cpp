#include "sai/matching.hpp"

namespace sai {

bool has_zero_free_diagonal(const SparseMatrix& a) {
    if (!a.is_square()) return false;
    for (Index k = 0; k < a.n_cols(); ++k) {
        if (!a.has_entry(k, k)) return false;
    }
    return true;
}

std::vector<Index> maximum_transversal(const SparseMatrix& a) {
    const Index n_cols = a.n_cols();
    const Index n_rows = a.n_rows();
    std::vector<Index> row_of_col(static_cast<std::size_t>(n_cols), -1);
    std::vector<Index> col_of_row(static_cast<std::size_t>(n_rows), -1);

    // Cheap assignment: prefer the diagonal, then the first free row.
    for (Index j = 0; j < n_cols; ++j) {
        if (j < n_rows && a.has_entry(j, j) && col_of_row[static_cast<std::size_t>(j)] < 0) {
            row_of_col[static_cast<std::size_t>(j)] = j;
            col_of_row[static_cast<std::size_t>(j)] = j;
        }
    }
    for (Index j = 0; j < n_cols; ++j) {
        if (row_of_col[static_cast<std::size_t>(j)] >= 0) continue;
        for (Index i : a.col_rows(j)) {
            if (col_of_row[static_cast<std::size_t>(i)] < 0) {
                row_of_col[static_cast<std::size_t>(j)] = i;
                col_of_row[static_cast<std::size_t>(i)] = j;
                break;
            }
        }
    }

    // Augmenting paths by iterative depth-first search from each free column.
    std::vector<Index> visit_stamp(static_cast<std::size_t>(n_rows), -1);
    std::vector<Index> col_stack;
    std::vector<Index> pos_stack;   // next entry to try within each stacked column
    std::vector<Index> row_stack;   // row used to reach the next stacked column
    for (Index start = 0; start < n_cols; ++start) {
        if (row_of_col[static_cast<std::size_t>(start)] >= 0) continue;
        col_stack.assign(1, start);
        pos_stack.assign(1, 0);
        row_stack.clear();
        Index free_row = -1;
        while (!col_stack.empty() && free_row < 0) {
            const Index j = col_stack.back();
            auto rows = a.col_rows(j);
            Index& pos = pos_stack.back();
            bool descended = false;
            while (pos < static_cast<Index>(rows.size())) {
                const Index i = rows[static_cast<std::size_t>(pos++)];
                if (visit_stamp[static_cast<std::size_t>(i)] == start) continue;
                visit_stamp[static_cast<std::size_t>(i)] = start;
                const Index owner = col_of_row[static_cast<std::size_t>(i)];
                row_stack.push_back(i);
                if (owner < 0) {
                    free_row = i;
                } else {
                    col_stack.push_back(owner);
                    pos_stack.push_back(0);
                }
                descended = true;
                break;
            }
            if (free_row >= 0) break;
            if (!descended) {
                col_stack.pop_back();
                pos_stack.pop_back();
                if (!row_stack.empty()) row_stack.pop_back();
            }
        }
        if (free_row < 0) continue;
        // col_stack[t] takes row_stack[t].
        for (std::size_t t = 0; t < col_stack.size(); ++t) {
            const Index j = col_stack[t];
            const Index i = row_stack[t];
            row_of_col[static_cast<std::size_t>(j)] = i;
            col_of_row[static_cast<std::size_t>(i)] = j;
        }
    }
    return row_of_col;
}

DiagonalFix ensure_nonzero_diagonal(const SparseMatrix& a) {
    if (!a.is_square()) throw ContractError("ensure_nonzero_diagonal: matrix must be square");
    if (has_zero_free_diagonal(a)) return {Permutation::identity(a.n_rows()), a};

    auto row_of_col = maximum_transversal(a);
    Index matched = 0;
    for (Index r : row_of_col) matched += (r >= 0) ? 1 : 0;
    if (matched < a.n_cols()) {
        throw StructuralSingularityError("matrix is structurally singular: maximum matching has size " +
                                             std::to_string(matched) + " of " + std::to_string(a.n_cols()),
                                         matched);
    }
    Permutation p(std::move(row_of_col));
    auto pa = a.permute_rows(p);
    return {std::move(p), std::move(pa)};
}

}  // namespace sai
