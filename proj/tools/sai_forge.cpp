// sai-forge: build sparse approximate inverse preconditioners and benchmark
// them with right-preconditioned BiCGStab.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sai/harness.hpp"
#include "sai/matching.hpp"
#include "sai/matrix_market.hpp"

namespace {

constexpr int kSpecError = 2;

struct SharedArgs {
    std::vector<std::string> matrices;
    std::vector<std::string> algorithms{"rsai"};
    std::vector<double> epsilons{0.4};
    std::vector<int> cs{3};
    std::vector<int> l_maxes;
    std::vector<int> l_as{3};
    std::string drop = "on";
    double spai_cap = 10.0;
    int threads = 0;
    bool serial = false;
};

void add_shared(CLI::App& cmd, SharedArgs& a, bool multi_matrix) {
    auto* m = cmd.add_option("--matrix", a.matrices, "Matrix Market file or gallery:convdiff:<grid> / gallery:random:<n>")->required();
    if (!multi_matrix) m->expected(1);
    cmd.add_option("--alg", a.algorithms, "rsai|spai (comma list)")->delimiter(',')->check(CLI::IsMember({"rsai", "spai"}));
    cmd.add_option("--eps", a.epsilons, "residual tolerance per column (comma list)")->delimiter(',');
    cmd.add_option("--c", a.cs, "RSAI dominant indices per loop (comma list)")->delimiter(',');
    cmd.add_option("--lmax", a.l_maxes, "maximum loops (default 10 for rsai, fill cap for spai)")->delimiter(',');
    cmd.add_option("--la", a.l_as, "SPAI indices added per loop (comma list)")->delimiter(',');
    cmd.add_option("--drop", a.drop, "adaptive dropping for rsai")->check(CLI::IsMember({"on", "off"}));
    cmd.add_option("--spai-cap", a.spai_cap, "SPAI l_max = floor(cap * nnz(A) / (la * n)) when --lmax is absent");
    cmd.add_option("--threads", a.threads, "worker threads for construction (0 = default)");
    cmd.add_flag("--serial", a.serial, "use the serial reference construction loop");
}

sai::ExperimentSpec to_spec(const SharedArgs& a) {
    sai::ExperimentSpec spec;
    spec.matrices = a.matrices;
    spec.algorithms.clear();
    for (const auto& s : a.algorithms) spec.algorithms.push_back(sai::parse_algorithm(s));
    spec.epsilons = a.epsilons;
    spec.cs = a.cs;
    spec.l_maxes = a.l_maxes;
    spec.l_as = a.l_as;
    spec.dropping = a.drop == "on";
    spec.spai_nnz_cap_ratio = a.spai_cap;
    spec.threads = a.threads;
    spec.execution = a.serial ? sai::Execution::serial : sai::Execution::openmp;
    return spec;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse approximate inverse preconditioning (RSAI, RSAI(tol), SPAI) with BiCGStab"};
    app.require_subcommand(1);

    SharedArgs run_args;
    double rtol = 1e-8;
    int maxit = 1000;
    std::string format = "table";
    auto* run = app.add_subcommand("run", "build preconditioners and solve A x = b with x = (1,...,1)");
    add_shared(*run, run_args, true);
    run->add_option("--rtol", rtol, "relative residual target");
    run->add_option("--maxit", maxit, "iteration cap");
    run->add_option("--format", format, "table|csv|json")->check(CLI::IsMember({"table", "csv", "json"}));

    SharedArgs pat_args;
    std::string out_path;
    auto* pattern = app.add_subcommand("pattern", "write the sparsity pattern of M as Matrix Market pattern");
    add_shared(*pattern, pat_args, false);
    pattern->add_option("--out", out_path, "output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kSpecError;
    }

    if (run->parsed()) {
        sai::ExperimentSpec spec;
        try {
            spec = to_spec(run_args);
            spec.solve.rtol = rtol;
            spec.solve.max_iters = maxit;
            spec.validate();
        } catch (const std::exception& e) {
            std::cerr << "sai-forge: " << e.what() << '\n';
            return kSpecError;
        }
        const auto reports = sai::run_experiment(spec);
        std::cout << sai::emit_report(reports, sai::parse_format(format));
        return 0;
    }

    // pattern
    sai::ExperimentSpec spec;
    try {
        spec = to_spec(pat_args);
        spec.validate();
        if (spec.algorithms.size() != 1 || spec.epsilons.size() != 1 || spec.cs.size() != 1 || spec.l_as.size() != 1 ||
            spec.l_maxes.size() > 1) {
            throw std::invalid_argument("pattern takes a single parameter point");
        }
    } catch (const std::exception& e) {
        std::cerr << "sai-forge: " << e.what() << '\n';
        return kSpecError;
    }
    try {
        const auto a = sai::ensure_nonzero_diagonal(sai::load_named_matrix(spec.matrices.front())).matrix;
        const auto [alg, cfg] = sai::expand_grid(spec, a).front();
        sai::BuildOptions opts;
        opts.execution = spec.execution;
        opts.threads = spec.threads;
        const auto p = sai::build_preconditioner(a, cfg, alg, opts);
        sai::pattern_dump(p.m, out_path);
        std::cerr << "wrote " << p.m.nnz() << " entries (spar " << static_cast<double>(p.m.nnz()) / a.nnz()
                  << ", n_c " << p.n_c << ") to " << out_path << '\n';
    } catch (const std::exception& e) {
        std::cerr << "sai-forge: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
