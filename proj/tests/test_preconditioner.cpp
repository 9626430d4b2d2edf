#include <doctest.h>

#include <algorithm>

#include "sai/gallery.hpp"
#include "sai/preconditioner.hpp"
#include "support.hpp"

using namespace sai;

namespace {

bool identical(const SparseMatrix& x, const SparseMatrix& y) {
    return std::ranges::equal(x.col_ptr(), y.col_ptr()) && std::ranges::equal(x.row_idx(), y.row_idx()) &&
           std::ranges::equal(x.values(), y.values());
}

}  // namespace

TEST_CASE("identity and diagonal") {
    for (Algorithm alg : {Algorithm::rsai, Algorithm::spai}) {
        auto p = build_preconditioner(SparseMatrix::identity(6), SaiConfig{}, alg);
        CHECK(identical(p.m, SparseMatrix::identity(6)));
        CHECK(p.n_c == 0);
        CHECK(p.total_loops == 0);

        std::vector<double> d{2.0, -4.0, 0.5, 8.0};
        auto q = build_preconditioner(SparseMatrix::diagonal(d), SaiConfig{}, alg);
        CHECK(q.n_c == 0);
        CHECK(q.m.nnz() == 4);
        for (Index i = 0; i < 4; ++i) CHECK(q.m.at(i, i) == doctest::Approx(1.0 / d[static_cast<std::size_t>(i)]));
    }
}

TEST_CASE("serial and OpenMP construction agree bit for bit") {
    const std::vector<SparseMatrix> corpus{gallery::convection_diffusion(15, 40.0), gallery::random_sparse(300, 5, 0.7, 8)};
    for (const auto& a : corpus) {
        for (Algorithm alg : {Algorithm::rsai, Algorithm::spai}) {
            for (bool drop : {true, false}) {
                SaiConfig cfg;
                cfg.epsilon = 0.25;
                cfg.dropping = drop;
                BuildOptions serial;
                serial.execution = Execution::serial;
                auto ref = build_preconditioner(a, cfg, alg, serial);
                for (int threads : {1, 2, 4}) {
                    BuildOptions par;
                    par.execution = Execution::openmp;
                    par.threads = threads;
                    auto p = build_preconditioner(a, cfg, alg, par);
                    CHECK(identical(p.m, ref.m));
                    CHECK(p.n_c == ref.n_c);
                    CHECK(p.residual_norms == ref.residual_norms);
                    CHECK(p.loops == ref.loops);
                }
            }
        }
    }
}

TEST_CASE("n_c counts the columns above epsilon") {
    auto a = gallery::convection_diffusion(12, 60.0);
    SaiConfig cfg;
    cfg.epsilon = 0.1;
    cfg.l_max = 2;
    BuildOptions opts;
    opts.keep_columns = true;
    auto p = build_preconditioner(a, cfg, Algorithm::rsai, opts);
    Index count = 0;
    for (double r : p.residual_norms) count += r > cfg.epsilon ? 1 : 0;
    CHECK(p.n_c == count);
    CHECK(p.n_c > 0);
    REQUIRE(p.columns.size() == static_cast<std::size_t>(a.n_cols()));
    for (Index k = 0; k < a.n_cols(); ++k) {
        const auto& st = p.columns[static_cast<std::size_t>(k)];
        CHECK(static_cast<Index>(p.m.col_rows(k).size()) == static_cast<Index>(st.m.nnz()));
        for (Index i : st.m.indices()) CHECK(p.m.at(i, k) == st.m.at(i));
    }
    CHECK(p.build_seconds >= 0.0);
}

TEST_CASE("failed columns are counted and total failure throws") {
    auto a = SparseMatrix::from_triplets(3, 3, {{0, 0, 1.0}, {1, 1, 1.0}});
    auto p = build_preconditioner(a, SaiConfig{}, Algorithm::rsai);
    CHECK(p.failed_columns == 1);
    CHECK(p.n_c == 1);
    CHECK(p.m.col_rows(2).empty());
    CHECK_THROWS(build_preconditioner(SparseMatrix::from_triplets(2, 2, {}), SaiConfig{}, Algorithm::rsai));
}
