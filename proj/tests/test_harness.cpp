#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sai/gallery.hpp"
#include "sai/harness.hpp"
#include "sai/matrix_market.hpp"

using namespace sai;

namespace {

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char ch : s) n += ch == '\n' ? 1 : 0;
    return n;
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("sai_harness_" + name);
}

}  // namespace

TEST_CASE("identity matrix from a file") {
    const auto path = temp_path("identity.mtx");
    save_matrix_market(SparseMatrix::identity(10), path);
    ExperimentSpec spec;
    spec.matrices = {path.string()};
    auto reports = run_experiment(spec);
    REQUIRE(reports.size() == 1);
    const auto& r = reports.front();
    CHECK(r.error.empty());
    CHECK(r.matrix == "sai_harness_identity");
    CHECK(r.spar == 1.0);
    CHECK(r.n_c == 0);
    CHECK(r.status == SolveStatus::converged);
    CHECK(r.iterations <= 1.0);
    CHECK_FALSE(r.permuted);
    std::filesystem::remove(path);
}

TEST_CASE("grid expansion") {
    auto a = gallery::convection_diffusion(10, 1.0);
    ExperimentSpec spec;
    spec.matrices = {"x"};
    spec.algorithms = {Algorithm::rsai, Algorithm::spai};
    spec.epsilons = {0.4, 0.2};
    spec.cs = {2, 3};
    spec.l_as = {1, 3, 5};
    auto grid = expand_grid(spec, a);
    CHECK(grid.size() == 2 * 2 + 2 * 3);
    CHECK(grid[0].first == Algorithm::rsai);
    CHECK(grid[0].second.l_max == 10);
    CHECK(grid[0].second.dropping);
    for (const auto& [alg, cfg] : grid) {
        if (alg == Algorithm::spai) {
            CHECK_FALSE(cfg.dropping);
            CHECK(cfg.l_max == spai_capped_l_max(a, cfg.l_a, 10.0));
        }
    }
    spec.l_maxes = {4, 7};
    CHECK(expand_grid(spec, a).size() == 2 * 2 * 2 + 2 * 3 * 2);
}

TEST_CASE("spec validation") {
    ExperimentSpec spec;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.matrices = {"gallery:convdiff:5"};
    CHECK_NOTHROW(spec.validate());
    spec.epsilons = {-1.0};
    CHECK_THROWS_AS(run_experiment(spec), std::invalid_argument);
    spec.epsilons = {0.3};
    spec.cs = {0};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    CHECK_THROWS_AS(parse_algorithm("ilu"), std::invalid_argument);
    CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
}

TEST_CASE("per-row failures do not stop the sweep") {
    ExperimentSpec spec;
    spec.matrices = {"/nonexistent/a.mtx", "gallery:convdiff:6"};
    spec.algorithms = {Algorithm::rsai, Algorithm::spai};
    auto reports = run_experiment(spec);
    REQUIRE(reports.size() == 4);
    CHECK_FALSE(reports[0].error.empty());
    CHECK_FALSE(reports[1].error.empty());
    CHECK(reports[2].error.empty());
    CHECK(reports[3].algorithm == Algorithm::spai);
    CHECK(iteration_cell(reports[0]) == "-");
}

TEST_CASE("zero diagonal input is permuted first") {
    const auto path = temp_path("antidiag.mtx");
    save_matrix_market(SparseMatrix::from_triplets(3, 3, {{0, 2, 1.0}, {1, 1, 2.0}, {2, 0, 3.0}}), path);
    ExperimentSpec spec;
    spec.matrices = {path.string()};
    auto r = run_experiment(spec).front();
    CHECK(r.error.empty());
    CHECK(r.permuted);
    CHECK(r.status == SolveStatus::converged);
    std::filesystem::remove(path);
}

TEST_CASE("sweeps are reproducible apart from timings") {
    ExperimentSpec spec;
    spec.matrices = {"gallery:convdiff:12:50"};
    spec.algorithms = {Algorithm::rsai, Algorithm::spai};
    spec.epsilons = {0.4, 0.2};
    spec.execution = Execution::serial;
    auto x = run_experiment(spec);
    spec.execution = Execution::openmp;
    auto y = run_experiment(spec);
    REQUIRE(x.size() == y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(x[i].nnz_m == y[i].nnz_m);
        CHECK(x[i].n_c == y[i].n_c);
        CHECK(x[i].iterations == y[i].iterations);
        CHECK(x[i].final_relative_residual == y[i].final_relative_residual);
        CHECK(x[i].spar == doctest::Approx(static_cast<double>(x[i].nnz_m) / x[i].nnz_a));
    }
}

TEST_CASE("emit_report") {
    SUBCASE("empty list prints only the header") {
        for (auto fmt : {ReportFormat::table, ReportFormat::csv}) {
            const auto s = emit_report({}, fmt);
            CHECK(count_lines(s) == 1);
            CHECK(s.rfind("matrix", 0) == 0);
        }
        CHECK(nlohmann::json::parse(emit_report({}, ReportFormat::json)).empty());
    }
    SUBCASE("markers") {
        RunReport cap;
        cap.matrix = "m1";
        cap.status = SolveStatus::max_iters;
        cap.iterations = 1000;
        RunReport stag = cap;
        stag.matrix = "m2";
        stag.status = SolveStatus::stagnated;
        RunReport ok = cap;
        ok.matrix = "m3";
        ok.status = SolveStatus::converged;
        ok.iterations = 28.5;
        CHECK(iteration_cell(cap) == "†");
        CHECK(iteration_cell(stag) == "‡");
        CHECK(iteration_cell(ok) == "29");

        const auto table = emit_report({cap, stag, ok}, ReportFormat::table);
        CHECK(count_lines(table) == 4);
        CHECK(table.find("†") != std::string::npos);
        CHECK(table.find("‡") != std::string::npos);

        const auto csv = emit_report({cap, stag, ok}, ReportFormat::csv);
        std::istringstream in(csv);
        std::string header, line;
        std::getline(in, header);
        CHECK(header == "matrix,algorithm,spar,ptime,n_c,iter,stime,eps,c,l_max,l_a,drop,relres,status");
        std::getline(in, line);
        CHECK(line.find(",†,") != std::string::npos);

        const auto j = nlohmann::json::parse(emit_report({cap, stag, ok}, ReportFormat::json));
        REQUIRE(j.size() == 3);
        CHECK(j[1]["iter"] == "‡");
        CHECK(j[2]["iterations"] == 28.5);
    }
    SUBCASE("csv quoting") {
        RunReport bad;
        bad.matrix = "a,b";
        bad.error = "said \"no\"";
        const auto csv = emit_report({bad}, ReportFormat::csv);
        CHECK(csv.find("\"a,b\"") != std::string::npos);
        CHECK(csv.find("\"error: said \"\"no\"\"\"") != std::string::npos);
    }
}

TEST_CASE("pattern_dump line counts") {
    const auto path = temp_path("pattern.mtx");
    auto read_lines = [&] {
        std::ifstream in(path);
        std::size_t n = 0;
        for (std::string l; std::getline(in, l);) ++n;
        return n;
    };
    pattern_dump(SparseMatrix::identity(1), path);
    CHECK(read_lines() == 3);
    pattern_dump(SparseMatrix::from_triplets(2, 2, {{0, 0, 1.0}, {1, 1, 2.0}}), path);
    CHECK(read_lines() == 4);
    std::filesystem::remove(path);
}

TEST_CASE("gallery names") {
    CHECK(gallery::is_gallery_name("gallery:convdiff:5"));
    CHECK_FALSE(gallery::is_gallery_name("sherman1.mtx"));
    CHECK(gallery::from_name("gallery:convdiff:5").n_cols() == 25);
    CHECK(gallery::from_name("gallery:random:40:3:7").n_cols() == 40);
    CHECK_THROWS_AS(gallery::from_name("gallery:convdiff:x"), std::invalid_argument);
    CHECK_THROWS_AS(gallery::from_name("gallery:poisson:5"), std::invalid_argument);
}
