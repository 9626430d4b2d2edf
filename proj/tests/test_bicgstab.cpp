#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>

#include "sai/bicgstab.hpp"
#include "sai/gallery.hpp"
#include "support.hpp"

using namespace sai;

namespace {

double true_relres(const SparseMatrix& a, const std::vector<double>& x, const std::vector<double>& b) {
    auto ax = sparse_matvec(a, x);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        num += (b[i] - ax[i]) * (b[i] - ax[i]);
        den += b[i] * b[i];
    }
    return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("rhs_for_unit_solution") {
    auto a = gallery::unit_bidiagonal(4);
    CHECK(rhs_for_unit_solution(a) == std::vector<double>{0.0, 0.0, 0.0, 1.0});
}

TEST_CASE("identity converges immediately") {
    auto eye = SparseMatrix::identity(10);
    const auto b = rhs_for_unit_solution(eye);
    auto out = bicgstab(eye, std::nullopt, b);
    CHECK(out.status == SolveStatus::converged);
    CHECK(out.iterations <= 1.0);
    for (double x : out.solution) CHECK(x == doctest::Approx(1.0));
}

TEST_CASE("diagonal with its inverse as preconditioner") {
    auto a = SparseMatrix::diagonal(std::vector<double>{2.0, 4.0});
    auto m = SparseMatrix::diagonal(std::vector<double>{0.5, 0.25});
    std::vector<double> b{3.0, -1.0};
    auto out = bicgstab(a, m, b);
    CHECK(out.status == SolveStatus::converged);
    CHECK(out.iterations <= 1.0);
    CHECK(out.solution[0] == doctest::Approx(1.5));
    CHECK(out.solution[1] == doctest::Approx(-0.25));
}

TEST_CASE("exact inverse as preconditioner") {
    auto a = gallery::random_sparse(30, 3, 1.5, 2);
    const Eigen::MatrixXd inv = test::to_dense(a).inverse();
    auto m = test::from_dense(inv);
    const auto b = rhs_for_unit_solution(a);
    auto out = bicgstab(a, m, b);
    CHECK(out.status == SolveStatus::converged);
    CHECK(out.iterations <= 2.0);
    CHECK(true_relres(a, out.solution, b) < 1e-8);
}

TEST_CASE("unpreconditioned solve tracks a textbook implementation") {
    auto a = gallery::convection_diffusion(7, 10.0);
    const auto b = rhs_for_unit_solution(a);
    auto out = bicgstab(a, std::nullopt, b);
    REQUIRE(out.status == SolveStatus::converged);
    Eigen::VectorXd bv = Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
    const int want = test::textbook_bicgstab_iterations(test::to_dense(a), bv, 1e-8, 1000);
    CHECK(std::abs(out.whole_iterations() - want) <= 1);
    CHECK(out.final_relative_residual < 1e-8);
    CHECK(true_relres(a, out.solution, b) == doctest::Approx(out.final_relative_residual).epsilon(1e-10));
}

TEST_CASE("random 50x50: early residuals follow the textbook recurrence") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto a = gallery::random_sparse(50, 5, 3.0, seed);
        const auto b = rhs_for_unit_solution(a);
        auto out = bicgstab(a, std::nullopt, b);
        REQUIRE(out.status == SolveStatus::converged);
        REQUIRE(out.residual_history.size() >= 8);

        const Eigen::MatrixXd d = test::to_dense(a);
        const Eigen::VectorXd bv = Eigen::Map<const Eigen::VectorXd>(b.data(), 50);
        Eigen::VectorXd r = bv, p = bv;
        const Eigen::VectorXd r0 = bv;
        double rho = r0.dot(r);
        for (int it = 1; it <= 2; ++it) {
            const Eigen::VectorXd v = d * p;
            const double alpha = rho / r0.dot(v);
            const Eigen::VectorXd sv = r - alpha * v;
            const Eigen::VectorXd t = d * sv;
            const double omega = t.dot(sv) / t.dot(t);
            r = sv - omega * t;
            CHECK(out.residual_history[static_cast<std::size_t>(2 * it - 2)] == doctest::Approx(sv.norm() / bv.norm()).epsilon(1e-10));
            CHECK(out.residual_history[static_cast<std::size_t>(2 * it - 1)] == doctest::Approx(r.norm() / bv.norm()).epsilon(1e-10));
            const double rho_new = r0.dot(r);
            p = r + (rho_new / rho) * (alpha / omega) * (p - omega * v);
            rho = rho_new;
        }
    }
}

TEST_CASE("iteration counts on convection-diffusion match the textbook oracle") {
    for (Index grid : {6, 8, 10}) {
        for (double pe : {1.0, 20.0}) {
            auto a = gallery::convection_diffusion(grid, pe);
            const auto b = rhs_for_unit_solution(a);
            auto out = bicgstab(a, std::nullopt, b);
            REQUIRE(out.status == SolveStatus::converged);
            const Eigen::VectorXd bv = Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
            const int want = test::textbook_bicgstab_iterations(test::to_dense(a), bv, 1e-8, 1000);
            CHECK(std::abs(out.whole_iterations() - want) <= 1);
        }
    }
}

TEST_CASE("skew rotation breaks down") {
    // r_hat^T A r = 0 on the first step.
    auto a = SparseMatrix::from_triplets(2, 2, {{0, 1, 1.0}, {1, 0, -1.0}});
    std::vector<double> b{1.0, 0.0};
    auto out = bicgstab(a, std::nullopt, b);
    CHECK(out.status == SolveStatus::breakdown);
}

TEST_CASE("deterministic") {
    auto a = gallery::convection_diffusion(10, 30.0);
    const auto b = rhs_for_unit_solution(a);
    auto x = bicgstab(a, std::nullopt, b);
    auto y = bicgstab(a, std::nullopt, b);
    CHECK(x.iterations == y.iterations);
    CHECK(x.solution == y.solution);
    CHECK(x.residual_history == y.residual_history);
}

TEST_CASE("iteration cap reports max_iters") {
    auto a = gallery::convection_diffusion(20, 5.0);
    const auto b = rhs_for_unit_solution(a);
    SolveOptions opts;
    opts.max_iters = 3;
    auto out = bicgstab(a, std::nullopt, b, opts);
    CHECK(out.status == SolveStatus::max_iters);
    CHECK(out.iterations <= 3.0);
    CHECK(out.final_relative_residual > 1e-8);
}

TEST_CASE("singular system does not report convergence") {
    auto a = SparseMatrix::from_triplets(3, 3, {{0, 0, 1.0}, {1, 1, 1.0}, {2, 2, 1e-320}});
    std::vector<double> b{1.0, 1.0, 1.0};
    auto out = bicgstab(a, std::nullopt, b);
    CHECK(out.status != SolveStatus::converged);
}

TEST_CASE("dimension checks") {
    auto a = SparseMatrix::identity(3);
    std::vector<double> b{1.0, 1.0};
    CHECK_THROWS_AS(bicgstab(a, std::nullopt, b), ContractError);
    std::vector<double> b3{1.0, 1.0, 1.0};
    CHECK_THROWS_AS(bicgstab(a, SparseMatrix::identity(2), b3), ContractError);
}

TEST_CASE("zero right-hand side") {
    auto a = SparseMatrix::identity(3);
    std::vector<double> b(3, 0.0);
    auto out = bicgstab(a, std::nullopt, b);
    CHECK(out.status == SolveStatus::converged);
    CHECK(out.iterations == 0.0);
}
