#pragma once

// Independent oracles for the unit and acceptance suites. Everything here
// works on dense Eigen matrices and never calls the library's QR, column
// builders or solver.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sai/sparse_matrix.hpp"

namespace sai::test {

inline Eigen::MatrixXd to_dense(const SparseMatrix& a) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(a.n_rows(), a.n_cols());
    for (const auto& t : a.to_triplets()) d(t.row, t.col) = t.value;
    return d;
}

inline Eigen::MatrixXd to_eigen(const DenseMatrix& a) {
    Eigen::MatrixXd d(a.rows(), a.cols());
    for (Index j = 0; j < a.cols(); ++j)
        for (Index i = 0; i < a.rows(); ++i) d(i, j) = a(i, j);
    return d;
}

inline SparseMatrix from_dense(const Eigen::MatrixXd& d) {
    std::vector<Triplet> t;
    for (Index j = 0; j < d.cols(); ++j)
        for (Index i = 0; i < d.rows(); ++i)
            if (d(i, j) != 0.0) t.push_back({i, j, d(i, j)});
    return SparseMatrix::from_triplets(static_cast<Index>(d.rows()), static_cast<Index>(d.cols()), std::move(t));
}

/// Random sparse matrix with roughly `density` fill and arbitrary pattern.
inline SparseMatrix random_pattern_matrix(Index rows, Index cols, double density, std::mt19937_64& rng) {
    std::bernoulli_distribution keep(density);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::vector<Triplet> t;
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i)
            if (keep(rng)) t.push_back({i, j, val(rng)});
    return SparseMatrix::from_triplets(rows, cols, std::move(t));
}

/// Random nonsingular sparse n x n matrix with a zero-free diagonal and
/// moderate condition number (below `max_cond`).
inline SparseMatrix random_nonsingular(Index n, double density, std::mt19937_64& rng, double max_cond = 1e6) {
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::uniform_real_distribution<double> mag(0.5, 2.0);
    for (;;) {
        auto base = random_pattern_matrix(n, n, density, rng);
        Eigen::MatrixXd d = to_dense(base);
        for (Index i = 0; i < n; ++i) d(i, i) = (val(rng) < 0 ? -1.0 : 1.0) * mag(rng);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(d);
        const auto sv = svd.singularValues();
        if (sv(n - 1) > 0.0 && sv(0) / sv(n - 1) < max_cond) return from_dense(d);
    }
}

/// Solves min ||A x - b|| through the normal equations A^T A x = A^T b.
inline Eigen::VectorXd normal_equations_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
    const Eigen::MatrixXd ata = a.transpose() * a;
    return ata.ldlt().solve(a.transpose() * b);
}

/// Textbook BiCGStab (no half-step exits, no residual replacement) on A x = b
/// with x0 = 0. Returns the iteration count at which ||r|| / ||b|| < rtol.
inline int textbook_bicgstab_iterations(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double rtol, int max_iters) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(b.size());
    Eigen::VectorXd r = b;
    const Eigen::VectorXd r0 = b;
    Eigen::VectorXd p = r;
    double rho = r0.dot(r);
    for (int it = 1; it <= max_iters; ++it) {
        const Eigen::VectorXd v = a * p;
        const double alpha = rho / r0.dot(v);
        const Eigen::VectorXd s = r - alpha * v;
        const Eigen::VectorXd t = a * s;
        const double omega = t.dot(s) / t.dot(t);
        x += alpha * p + omega * s;
        r = s - omega * t;
        if (r.norm() / b.norm() < rtol) return it;
        const double rho_new = r0.dot(r);
        const double beta = (rho_new / rho) * (alpha / omega);
        rho = rho_new;
        p = r + beta * (p - omega * v);
    }
    return max_iters + 1;
}

inline double rel_err(const Eigen::VectorXd& got, const Eigen::VectorXd& want) {
    const double scale = std::max(want.norm(), 1e-300);
    return (got - want).norm() / scale;
}

/// Directory holding the reference Matrix Market files, or nullopt.
inline std::optional<std::filesystem::path> matrix_dir() {
    if (const char* env = std::getenv("SAI_MATRIX_DIR")) return std::filesystem::path(env);
#ifdef SAI_DEFAULT_MATRIX_DIR
    return std::filesystem::path(SAI_DEFAULT_MATRIX_DIR);
#else
    return std::nullopt;
#endif
}

inline std::optional<std::filesystem::path> find_matrix(const std::string& name) {
    auto dir = matrix_dir();
    if (!dir) return std::nullopt;
    auto p = *dir / (name + ".mtx");
    if (std::filesystem::exists(p)) return p;
    return std::nullopt;
}

}  // namespace sai::test
