#include "sai/gallery.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace sai::gallery {

SparseMatrix convection_diffusion(Index grid, double peclet) {
    if (grid < 1) throw std::invalid_argument("convection_diffusion: grid must be positive");
    const Index n = grid * grid;
    const double h = 1.0 / (grid + 1);
    const double conv = peclet * h;  // upwind convection in +x and +y
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(n) * 5);
    auto id = [grid](Index i, Index j) { return i * grid + j; };
    for (Index i = 0; i < grid; ++i) {
        for (Index j = 0; j < grid; ++j) {
            const Index row = id(i, j);
            t.push_back({row, row, 4.0 + 2.0 * conv});
            if (j > 0) t.push_back({row, id(i, j - 1), -1.0 - conv});
            if (j + 1 < grid) t.push_back({row, id(i, j + 1), -1.0});
            if (i > 0) t.push_back({row, id(i - 1, j), -1.0 - conv});
            if (i + 1 < grid) t.push_back({row, id(i + 1, j), -1.0});
        }
    }
    return SparseMatrix::from_triplets(n, n, std::move(t));
}

SparseMatrix random_sparse(Index n, int per_col, double dominance, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_sparse: n must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Index> pick(0, n - 1);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::vector<Triplet> t;
    for (Index j = 0; j < n; ++j) {
        double off = 0.0;
        for (int e = 0; e < per_col && n > 1; ++e) {
            Index i = pick(rng);
            if (i == j) continue;
            const double v = val(rng);
            t.push_back({i, j, v});
            off += std::abs(v);
        }
        const double sign = val(rng) < 0.0 ? -1.0 : 1.0;
        t.push_back({j, j, sign * (dominance * off + 1.0)});
    }
    return SparseMatrix::from_triplets(n, n, std::move(t));
}

SparseMatrix unit_bidiagonal(Index n) {
    std::vector<Triplet> t;
    for (Index i = 0; i < n; ++i) {
        t.push_back({i, i, 1.0});
        if (i + 1 < n) t.push_back({i, i + 1, -1.0});
    }
    return SparseMatrix::from_triplets(n, n, std::move(t));
}

bool is_gallery_name(const std::string& name) { return name.rfind("gallery:", 0) == 0; }

SparseMatrix from_name(const std::string& name) {
    std::vector<std::string> parts;
    std::stringstream ss(name);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() < 3 || parts[0] != "gallery") throw std::invalid_argument("bad gallery name '" + name + "'");
    try {
        if (parts[1] == "convdiff") {
            const double pe = parts.size() > 3 ? std::stod(parts[3]) : 20.0;
            return convection_diffusion(static_cast<Index>(std::stoi(parts[2])), pe);
        }
        if (parts[1] == "random") {
            const int per_col = parts.size() > 3 ? std::stoi(parts[3]) : 4;
            const auto seed = parts.size() > 4 ? std::stoull(parts[4]) : 1ULL;
            return random_sparse(static_cast<Index>(std::stoi(parts[2])), per_col, 1.2, seed);
        }
    } catch (const std::logic_error&) {
        throw std::invalid_argument("bad gallery name '" + name + "'");
    }
    throw std::invalid_argument("unknown gallery matrix '" + parts[1] + "'");
}

}  // namespace sai::gallery
