#include "sai/qr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sai {

namespace {

double sum_sq(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

}  // namespace

QrFactor QrFactor::factor(const DenseMatrix& a, std::span<const double> rhs, std::span<const Index> row_ids,
                          std::span<const Index> col_ids, double rank_tol) {
    if (rhs.size() != static_cast<std::size_t>(a.rows())) throw ContractError("qr: rhs length differs from row count");
    if (!row_ids.empty() && row_ids.size() != static_cast<std::size_t>(a.rows())) throw ContractError("qr: row id count mismatch");
    if (!col_ids.empty() && col_ids.size() != static_cast<std::size_t>(a.cols())) throw ContractError("qr: column id count mismatch");

    QrFactor f;
    f.rank_tol_ = rank_tol;
    if (row_ids.empty()) {
        f.row_ids_.resize(static_cast<std::size_t>(a.rows()));
        std::iota(f.row_ids_.begin(), f.row_ids_.end(), Index{0});
    } else {
        f.row_ids_.assign(row_ids.begin(), row_ids.end());
    }
    f.qtb_.assign(rhs.begin(), rhs.end());
    f.frob_sq_ = 0.0;
    for (Index j = 0; j < a.cols(); ++j) f.frob_sq_ += sum_sq(a.col(j));

    for (Index j = 0; j < a.cols(); ++j) {
        std::vector<double> x(a.col(j).begin(), a.col(j).end());
        f.apply_qt(x);
        f.try_accept(std::move(x), col_ids.empty() ? j : col_ids[static_cast<std::size_t>(j)]);
    }
    return f;
}

std::vector<Index> QrFactor::append_columns(const DenseMatrix& new_cols, std::span<const Index> new_col_ids,
                                            std::span<const Index> new_row_ids, std::span<const double> rhs_tail) {
    const std::size_t m_old = row_ids_.size();
    if (static_cast<std::size_t>(new_cols.rows()) != m_old + new_row_ids.size()) {
        throw ContractError("qr_append_columns: new columns must span the old rows followed by the new rows");
    }
    if (new_col_ids.size() != static_cast<std::size_t>(new_cols.cols())) throw ContractError("qr_append_columns: column id count mismatch");
    if (rhs_tail.size() != new_row_ids.size()) throw ContractError("qr_append_columns: rhs tail length mismatch");
    if (!new_row_ids.empty()) {
        std::vector<Index> old_sorted(row_ids_);
        std::sort(old_sorted.begin(), old_sorted.end());
        std::vector<Index> new_sorted(new_row_ids.begin(), new_row_ids.end());
        std::sort(new_sorted.begin(), new_sorted.end());
        if (std::adjacent_find(new_sorted.begin(), new_sorted.end()) != new_sorted.end()) {
            throw ContractError("qr_append_columns: duplicate new row id");
        }
        std::vector<Index> common;
        std::set_intersection(old_sorted.begin(), old_sorted.end(), new_sorted.begin(), new_sorted.end(), std::back_inserter(common));
        if (!common.empty()) {
            throw ContractError("qr_append_columns: row " + std::to_string(common.front()) + " is already part of the factorization");
        }
    }

    row_ids_.insert(row_ids_.end(), new_row_ids.begin(), new_row_ids.end());
    qtb_.insert(qtb_.end(), rhs_tail.begin(), rhs_tail.end());
    for (Index j = 0; j < new_cols.cols(); ++j) frob_sq_ += sum_sq(new_cols.col(j));

    std::vector<Index> rejected;
    for (Index j = 0; j < new_cols.cols(); ++j) {
        std::vector<double> x(new_cols.col(j).begin(), new_cols.col(j).end());
        apply_qt(x);
        const Index id = new_col_ids[static_cast<std::size_t>(j)];
        if (!try_accept(std::move(x), id)) rejected.push_back(id);
    }
    return rejected;
}

void QrFactor::apply_qt(std::span<double> x) const {
    for (std::size_t t = 0; t < reflectors_.size(); ++t) {
        const auto& h = reflectors_[t];
        if (h.tau != 0.0) {
            double dot = 0.0;
            for (std::size_t i = 0; i < h.v.size(); ++i) dot += h.v[i] * x[t + i];
            const double s = h.tau * dot;
            for (std::size_t i = 0; i < h.v.size(); ++i) x[t + i] -= s * h.v[i];
        }
        x[t] *= h.sign;
    }
}

bool QrFactor::try_accept(std::vector<double> x, Index col_id) {
    const std::size_t k = col_ids_.size();
    const std::size_t m = row_ids_.size();
    if (k >= m) return false;

    const double alpha = x[k];
    double tail_sq = 0.0;
    for (std::size_t i = k + 1; i < m; ++i) tail_sq += x[i] * x[i];
    const double norm_x = std::sqrt(alpha * alpha + tail_sq);
    if (norm_x <= rank_tol_ * std::sqrt(frob_sq_)) return false;

    Reflector h;
    h.v.assign(m - k, 0.0);
    h.v[0] = 1.0;
    double diag = 0.0;
    if (tail_sq == 0.0) {
        h.tau = 0.0;
        h.sign = alpha >= 0.0 ? 1.0 : -1.0;
        diag = std::abs(alpha);
    } else {
        const double beta = -std::copysign(norm_x, alpha);
        h.tau = (beta - alpha) / beta;
        const double scale = 1.0 / (alpha - beta);
        for (std::size_t i = 1; i < h.v.size(); ++i) h.v[i] = x[k + i] * scale;
        h.sign = beta < 0.0 ? -1.0 : 1.0;
        diag = std::abs(beta);
    }

    // Reflect Q^T b.
    if (h.tau != 0.0) {
        double dot = 0.0;
        for (std::size_t i = 0; i < h.v.size(); ++i) dot += h.v[i] * qtb_[k + i];
        const double s = h.tau * dot;
        for (std::size_t i = 0; i < h.v.size(); ++i) qtb_[k + i] -= s * h.v[i];
    }
    qtb_[k] *= h.sign;

    std::vector<double> rcol(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(k));
    rcol.push_back(diag);
    r_cols_.push_back(std::move(rcol));
    reflectors_.push_back(std::move(h));
    col_ids_.push_back(col_id);
    return true;
}

std::vector<double> QrFactor::solution() const {
    const std::size_t k = col_ids_.size();
    std::vector<double> x(qtb_.begin(), qtb_.begin() + static_cast<std::ptrdiff_t>(k));
    for (std::size_t jj = k; jj-- > 0;) {
        x[jj] /= r_cols_[jj][jj];
        const double xj = x[jj];
        for (std::size_t i = 0; i < jj; ++i) x[i] -= r_cols_[jj][i] * xj;
    }
    return x;
}

double QrFactor::residual_norm() const noexcept {
    double s = 0.0;
    for (std::size_t i = col_ids_.size(); i < qtb_.size(); ++i) s += qtb_[i] * qtb_[i];
    return std::sqrt(s);
}

DenseMatrix QrFactor::r() const {
    const auto k = static_cast<Index>(col_ids_.size());
    DenseMatrix out(k, k);
    for (Index j = 0; j < k; ++j) {
        for (Index i = 0; i <= j; ++i) out(i, j) = r_cols_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    }
    return out;
}

DenseMatrix QrFactor::reconstruct() const {
    const auto m = static_cast<Index>(row_ids_.size());
    const auto k = static_cast<Index>(col_ids_.size());
    DenseMatrix out(m, k);
    std::vector<double> y(static_cast<std::size_t>(m));
    for (Index j = 0; j < k; ++j) {
        std::fill(y.begin(), y.end(), 0.0);
        const auto& rc = r_cols_[static_cast<std::size_t>(j)];
        std::copy(rc.begin(), rc.end(), y.begin());
        for (std::size_t t = reflectors_.size(); t-- > 0;) {
            const auto& h = reflectors_[t];
            y[t] *= h.sign;
            if (h.tau == 0.0) continue;
            double dot = 0.0;
            for (std::size_t i = 0; i < h.v.size(); ++i) dot += h.v[i] * y[t + i];
            const double s = h.tau * dot;
            for (std::size_t i = 0; i < h.v.size(); ++i) y[t + i] -= s * h.v[i];
        }
        std::copy(y.begin(), y.end(), out.col(j).begin());
    }
    return out;
}

double QrFactor::frobenius_norm() const noexcept { return std::sqrt(frob_sq_); }

LsSolution qr_solve(const DenseMatrix& a, std::span<const double> rhs, std::span<const Index> row_ids,
                    std::span<const Index> col_ids) {
    LsSolution out;
    out.factor = QrFactor::factor(a, rhs, row_ids, col_ids);
    if (out.factor.cols() < a.cols()) {
        std::vector<Index> offered;
        if (col_ids.empty()) {
            offered.resize(static_cast<std::size_t>(a.cols()));
            std::iota(offered.begin(), offered.end(), Index{0});
        } else {
            offered.assign(col_ids.begin(), col_ids.end());
        }
        auto accepted = out.factor.col_ids();
        for (Index id : offered) {
            if (std::find(accepted.begin(), accepted.end(), id) == accepted.end()) out.rejected.push_back(id);
        }
    }
    out.solution = out.factor.solution();
    out.residual_norm = out.factor.residual_norm();
    return out;
}

LsSolution qr_append_columns(QrFactor factor, const DenseMatrix& new_cols, std::span<const Index> new_col_ids,
                             std::span<const Index> new_row_ids, std::span<const double> rhs_tail) {
    LsSolution out;
    out.rejected = factor.append_columns(new_cols, new_col_ids, new_row_ids, rhs_tail);
    out.solution = factor.solution();
    out.residual_norm = factor.residual_norm();
    out.factor = std::move(factor);
    return out;
}

}  // namespace sai
