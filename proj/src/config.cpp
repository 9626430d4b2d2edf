#include "sai/config.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sai {

void SaiConfig::validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive, got " + std::to_string(epsilon));
    if (c < 1) throw std::invalid_argument("c must be at least 1, got " + std::to_string(c));
    if (l_max < 1) throw std::invalid_argument("l_max must be at least 1, got " + std::to_string(l_max));
    if (l_a < 1) throw std::invalid_argument("l_a must be at least 1, got " + std::to_string(l_a));
    if (!(spai_nnz_cap_ratio > 0.0)) throw std::invalid_argument("spai_nnz_cap_ratio must be positive");
}

int spai_capped_l_max(const SparseMatrix& a, int l_a, double ratio) {
    if (a.n_cols() == 0 || l_a < 1) throw std::invalid_argument("spai_capped_l_max: empty matrix or l_a < 1");
    const double l = std::floor(ratio * static_cast<double>(a.nnz()) / (static_cast<double>(l_a) * a.n_cols()));
    return std::max(1, static_cast<int>(l));
}

std::int64_t rsai_nnz_bound(const SparseMatrix& a, const SaiConfig& cfg) {
    cfg.validate();
    const std::int64_t n = a.n_cols();
    const std::int64_t g = a.max_row_nnz();
    return std::min((g * cfg.c * cfg.l_max + 1) * n, n * n);
}

std::int64_t column_pattern_bound(const SparseMatrix& a, int c, int loops) {
    const std::int64_t g = a.max_row_nnz();
    return std::min<std::int64_t>(g * c * loops + 1, a.n_cols());
}

}  // namespace sai
