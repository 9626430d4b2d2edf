#include "sai/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "sai/gallery.hpp"
#include "sai/matching.hpp"
#include "sai/matrix_market.hpp"

namespace sai {

void ExperimentSpec::validate() const {
    if (matrices.empty()) throw std::invalid_argument("no matrices given");
    if (algorithms.empty() || epsilons.empty() || cs.empty() || l_as.empty()) throw std::invalid_argument("parameter grid is empty");
    for (double e : epsilons) {
        if (!(e > 0.0)) throw std::invalid_argument("epsilon must be positive");
    }
    for (int c : cs) {
        if (c < 1) throw std::invalid_argument("c must be at least 1");
    }
    for (int l : l_maxes) {
        if (l < 1) throw std::invalid_argument("l_max must be at least 1");
    }
    for (int l : l_as) {
        if (l < 1) throw std::invalid_argument("l_a must be at least 1");
    }
    if (!(spai_nnz_cap_ratio > 0.0)) throw std::invalid_argument("SPAI cap ratio must be positive");
    if (!(solve.rtol > 0.0)) throw std::invalid_argument("rtol must be positive");
    if (solve.max_iters < 1) throw std::invalid_argument("max iterations must be at least 1");
    if (threads < 0) throw std::invalid_argument("threads must be non-negative");
}

std::string_view to_string(Algorithm a) noexcept { return a == Algorithm::rsai ? "rsai" : "spai"; }

Algorithm parse_algorithm(std::string_view s) {
    if (s == "rsai") return Algorithm::rsai;
    if (s == "spai") return Algorithm::spai;
    throw std::invalid_argument("unknown algorithm '" + std::string(s) + "'");
}

ReportFormat parse_format(std::string_view s) {
    if (s == "table") return ReportFormat::table;
    if (s == "csv") return ReportFormat::csv;
    if (s == "json") return ReportFormat::json;
    throw std::invalid_argument("unknown format '" + std::string(s) + "'");
}

SparseMatrix load_named_matrix(const std::string& name) {
    return gallery::is_gallery_name(name) ? gallery::from_name(name) : load_matrix_market(name);
}

std::vector<std::pair<Algorithm, SaiConfig>> expand_grid(const ExperimentSpec& spec, const SparseMatrix& a) {
    std::vector<std::pair<Algorithm, SaiConfig>> out;
    for (Algorithm alg : spec.algorithms) {
        for (double eps : spec.epsilons) {
            SaiConfig base;
            base.epsilon = eps;
            base.spai_nnz_cap_ratio = spec.spai_nnz_cap_ratio;
            if (alg == Algorithm::rsai) {
                base.dropping = spec.dropping;
                base.l_a = spec.l_as.front();
                for (int c : spec.cs) {
                    base.c = c;
                    if (spec.l_maxes.empty()) {
                        base.l_max = 10;
                        out.emplace_back(alg, base);
                    }
                    for (int l : spec.l_maxes) {
                        base.l_max = l;
                        out.emplace_back(alg, base);
                    }
                }
            } else {
                base.dropping = false;
                base.c = spec.cs.front();
                for (int la : spec.l_as) {
                    base.l_a = la;
                    if (spec.l_maxes.empty()) {
                        base.l_max = spai_capped_l_max(a, la, spec.spai_nnz_cap_ratio);
                        out.emplace_back(alg, base);
                    }
                    for (int l : spec.l_maxes) {
                        base.l_max = l;
                        out.emplace_back(alg, base);
                    }
                }
            }
        }
    }
    return out;
}

RunReport run_point(const std::string& name, const SparseMatrix& a, Algorithm algorithm, const SaiConfig& cfg,
                    const ExperimentSpec& spec, Preconditioner* keep) {
    RunReport r;
    r.matrix = name;
    r.algorithm = algorithm;
    r.cfg = cfg;
    r.n = a.n_cols();
    r.nnz_a = a.nnz();
    try {
        BuildOptions opts;
        opts.execution = spec.execution;
        opts.threads = spec.threads;
        auto p = build_preconditioner(a, cfg, algorithm, opts);
        r.ptime = p.build_seconds;
        r.nnz_m = p.m.nnz();
        r.spar = static_cast<double>(p.m.nnz()) / static_cast<double>(a.nnz());
        r.n_c = p.n_c;

        const auto b = rhs_for_unit_solution(a);
        const auto t0 = std::chrono::steady_clock::now();
        std::optional<SparseMatrix> m{p.m};
        auto outcome = bicgstab(a, m, b, spec.solve);
        r.stime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.status = outcome.status;
        r.iterations = outcome.iterations;
        r.final_relative_residual = outcome.final_relative_residual;
        if (keep) *keep = std::move(p);
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    return r;
}

std::vector<RunReport> run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    std::vector<RunReport> out;
    for (const auto& name : spec.matrices) {
        const std::string label = gallery::is_gallery_name(name) ? name : std::filesystem::path(name).stem().string();
        SparseMatrix a;
        bool permuted = false;
        try {
            auto raw = load_named_matrix(name);
            auto fixed = ensure_nonzero_diagonal(raw);
            permuted = !fixed.permutation.is_identity();
            a = std::move(fixed.matrix);
        } catch (const std::exception& e) {
            // One error row per algorithm.
            for (Algorithm alg : spec.algorithms) {
                RunReport r;
                r.matrix = label;
                r.algorithm = alg;
                r.error = e.what();
                out.push_back(std::move(r));
            }
            continue;
        }
        for (const auto& [alg, cfg] : expand_grid(spec, a)) {
            auto r = run_point(label, a, alg, cfg, spec);
            r.permuted = permuted;
            out.push_back(std::move(r));
        }
    }
    return out;
}

std::string iteration_cell(const RunReport& r) {
    if (!r.error.empty()) return "-";
    switch (r.status) {
        case SolveStatus::converged: return std::to_string(static_cast<int>(std::ceil(r.iterations)));
        case SolveStatus::max_iters: return "†";
        case SolveStatus::stagnated: return "‡";
        case SolveStatus::breakdown: return "brk";
    }
    return "?";
}

namespace {

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

const char* kColumns[] = {"matrix", "algorithm", "spar", "ptime", "n_c", "iter", "stime",
                          "eps", "c", "l_max", "l_a", "drop", "relres", "status"};

std::vector<std::string> cells(const RunReport& r) {
    const bool ok = r.error.empty();
    const bool converged = ok && r.status == SolveStatus::converged;
    return {
        r.matrix,
        std::string(to_string(r.algorithm)),
        ok ? fmt("%.2f", r.spar) : "-",
        ok ? fmt("%.2f", r.ptime) : "-",
        ok ? std::to_string(r.n_c) : "-",
        iteration_cell(r),
        converged ? fmt("%.2f", r.stime) : "-",
        fmt("%g", r.cfg.epsilon),
        std::to_string(r.cfg.c),
        std::to_string(r.cfg.l_max),
        std::to_string(r.cfg.l_a),
        r.cfg.dropping ? "on" : "off",
        ok ? fmt("%.2e", r.final_relative_residual) : "-",
        ok ? std::string(to_string(r.status)) : "error: " + r.error,
    };
}

// Display width in code points, so the dagger markers align.
std::size_t display_width(const std::string& s) {
    std::size_t w = 0;
    for (unsigned char ch : s) w += (ch & 0xC0) != 0x80 ? 1 : 0;
    return w;
}

}  // namespace

std::string emit_report(const std::vector<RunReport>& reports, ReportFormat format) {
    std::ostringstream os;
    constexpr std::size_t n_cols = std::size(kColumns);
    if (format == ReportFormat::json) {
        auto arr = nlohmann::json::array();
        for (const auto& r : reports) {
            nlohmann::json j;
            j["matrix"] = r.matrix;
            j["algorithm"] = std::string(to_string(r.algorithm));
            j["epsilon"] = r.cfg.epsilon;
            j["c"] = r.cfg.c;
            j["l_max"] = r.cfg.l_max;
            j["l_a"] = r.cfg.l_a;
            j["dropping"] = r.cfg.dropping;
            j["n"] = r.n;
            j["nnz_a"] = r.nnz_a;
            j["nnz_m"] = r.nnz_m;
            j["permuted"] = r.permuted;
            j["spar"] = r.spar;
            j["ptime"] = r.ptime;
            j["n_c"] = r.n_c;
            j["iterations"] = r.iterations;
            j["iter"] = iteration_cell(r);
            j["stime"] = r.stime;
            j["relres"] = r.final_relative_residual;
            j["status"] = std::string(to_string(r.status));
            if (!r.error.empty()) j["error"] = r.error;
            arr.push_back(std::move(j));
        }
        os << arr.dump(2) << '\n';
        return os.str();
    }

    std::vector<std::vector<std::string>> rows;
    rows.reserve(reports.size());
    for (const auto& r : reports) rows.push_back(cells(r));

    if (format == ReportFormat::csv) {
        auto quote = [](const std::string& s) {
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string q = "\"";
            for (char ch : s) q += (ch == '"') ? std::string("\"\"") : std::string(1, ch);
            return q + "\"";
        };
        for (std::size_t c = 0; c < n_cols; ++c) os << (c ? "," : "") << kColumns[c];
        os << '\n';
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < n_cols; ++c) os << (c ? "," : "") << quote(row[c]);
            os << '\n';
        }
        return os.str();
    }

    std::vector<std::size_t> width(n_cols);
    for (std::size_t c = 0; c < n_cols; ++c) width[c] = display_width(kColumns[c]);
    for (const auto& row : rows) {
        for (std::size_t c = 0; c + 1 < n_cols; ++c) width[c] = std::max(width[c], display_width(row[c]));
    }
    auto line = [&](const auto& get) {
        for (std::size_t c = 0; c < n_cols; ++c) {
            const std::string s = get(c);
            os << s;
            if (c + 1 < n_cols) os << std::string(width[c] - display_width(s) + 2, ' ');
        }
        os << '\n';
    };
    line([&](std::size_t c) { return std::string(kColumns[c]); });
    for (const auto& row : rows) line([&](std::size_t c) { return row[c]; });
    return os.str();
}

}  // namespace sai
