#include "sai/bicgstab.hpp"

#include <cmath>

namespace sai {

namespace {

double dot(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

// z = M v, or z = v without a preconditioner.
void apply_precond(const std::optional<SparseMatrix>& m, std::span<const double> v, std::span<double> z) {
    if (m) {
        sparse_matvec(*m, v, z);
    } else {
        std::copy(v.begin(), v.end(), z.begin());
    }
}

double true_relative_residual(const SparseMatrix& a, std::span<const double> b, std::span<const double> x, double norm_b,
                              std::vector<double>& scratch) {
    sparse_matvec(a, x, scratch);
    for (std::size_t i = 0; i < scratch.size(); ++i) scratch[i] = b[i] - scratch[i];
    return norm2(scratch) / norm_b;
}

}  // namespace

std::string_view to_string(SolveStatus s) noexcept {
    switch (s) {
        case SolveStatus::converged: return "converged";
        case SolveStatus::max_iters: return "max_iters";
        case SolveStatus::stagnated: return "stagnated";
        case SolveStatus::breakdown: return "breakdown";
    }
    return "unknown";
}

int SolveOutcome::whole_iterations() const noexcept { return static_cast<int>(std::ceil(iterations)); }

std::vector<double> rhs_for_unit_solution(const SparseMatrix& a) {
    std::vector<double> ones(static_cast<std::size_t>(a.n_cols()), 1.0);
    return sparse_matvec(a, ones);
}

SolveOutcome bicgstab(const SparseMatrix& a, const std::optional<SparseMatrix>& m, std::span<const double> b,
                      const SolveOptions& opt) {
    const auto n = static_cast<std::size_t>(a.n_rows());
    if (!a.is_square() || b.size() != n) throw ContractError("bicgstab: dimension mismatch");
    if (m && (m->n_rows() != a.n_cols() || m->n_cols() != a.n_rows())) throw ContractError("bicgstab: preconditioner dimension mismatch");

    SolveOutcome out;
    out.solution.assign(n, 0.0);
    const double norm_b = norm2(b);
    if (norm_b == 0.0) {
        out.status = SolveStatus::converged;
        return out;
    }

    std::vector<double> x(n, 0.0), r(b.begin(), b.end()), r_hat(b.begin(), b.end());
    std::vector<double> p(n, 0.0), v(n, 0.0), ph(n), s(n), sh(n), t(n), x_half(n), scratch(n);

    double rho_prev = 1.0;
    double alpha = 1.0;
    double omega = 1.0;
    double best = 1.0;
    int since_best = 0;
    const double tiny = opt.breakdown_threshold;

    auto finish = [&](SolveStatus status, const std::vector<double>& xs) {
        out.status = status;
        out.solution = xs;
        out.final_relative_residual = true_relative_residual(a, b, xs, norm_b, scratch);
        return out;
    };

    for (int it = 1; it <= opt.max_iters; ++it) {
        const double rho = dot(r_hat, r);
        if (!std::isfinite(rho) || std::abs(rho) < tiny) return finish(SolveStatus::breakdown, x);
        if (it == 1) {
            p = r;
        } else {
            const double beta = (rho / rho_prev) * (alpha / omega);
            if (!std::isfinite(beta)) return finish(SolveStatus::breakdown, x);
            for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
        }
        apply_precond(m, p, ph);
        sparse_matvec(a, ph, v);
        const double rv = dot(r_hat, v);
        if (!std::isfinite(rv) || std::abs(rv) < tiny) return finish(SolveStatus::breakdown, x);
        alpha = rho / rv;
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = r[i] - alpha * v[i];
            x_half[i] = x[i] + alpha * ph[i];
        }

        out.iterations = it - 0.5;
        const double rel_half = norm2(s) / norm_b;
        out.residual_history.push_back(rel_half);
        if (!std::isfinite(rel_half)) return finish(SolveStatus::breakdown, x);
        if (rel_half < opt.rtol && true_relative_residual(a, b, x_half, norm_b, scratch) < opt.rtol) {
            return finish(SolveStatus::converged, x_half);
        }

        apply_precond(m, s, sh);
        sparse_matvec(a, sh, t);
        const double tt = dot(t, t);
        if (!std::isfinite(tt) || tt < tiny) return finish(SolveStatus::breakdown, x_half);
        omega = dot(t, s) / tt;
        if (!std::isfinite(omega) || std::abs(omega) < tiny) return finish(SolveStatus::breakdown, x_half);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = x_half[i] + omega * sh[i];
            r[i] = s[i] - omega * t[i];
        }

        out.iterations = it;
        double rel = norm2(r) / norm_b;
        out.residual_history.push_back(rel);
        if (!std::isfinite(rel)) return finish(SolveStatus::breakdown, x);
        if (rel < opt.rtol) {
            const double true_rel = true_relative_residual(a, b, x, norm_b, scratch);
            if (true_rel < opt.rtol) return finish(SolveStatus::converged, x);
            // The recurrence drifted: restart it from the true residual.
            r = scratch;
            rel = true_rel;
        }

        if (rel < best * (1.0 - opt.stagnation_improvement)) {
            best = rel;
            since_best = 0;
        } else if (++since_best >= opt.stagnation_window) {
            return finish(SolveStatus::stagnated, x);
        }
        rho_prev = rho;
    }
    return finish(SolveStatus::max_iters, x);
}

}  // namespace sai
