#include "sai/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <vector>

namespace sai {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

// Parses a non-negative integer that must fit in Index.
Index parse_dim(const std::string& tok, std::size_t line_no, const char* what, const std::string& source) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec == std::errc::result_out_of_range || (ec == std::errc() && v > std::numeric_limits<Index>::max())) {
        throw MatrixMarketError(std::string(what) + " '" + tok + "' overflows the index type", line_no, source);
    }
    if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 0) {
        throw MatrixMarketError(std::string("invalid ") + what + " '" + tok + "'", line_no, source);
    }
    return static_cast<Index>(v);
}

}  // namespace

SparseMatrix read_matrix_market(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw MatrixMarketError("empty input", 1, source);
    ++line_no;
    bool symmetric = false;
    {
        std::istringstream hs(line);
        std::string banner, object, format, field, symmetry;
        hs >> banner >> object >> format >> field >> symmetry;
        if (banner != "%%MatrixMarket") throw MatrixMarketError("missing %%MatrixMarket banner", line_no, source);
        object = lower(object);
        format = lower(format);
        field = lower(field);
        symmetry = lower(symmetry);
        if (object != "matrix") throw MatrixMarketError("unsupported object '" + object + "'", line_no, source);
        if (format != "coordinate") throw MatrixMarketError("unsupported format '" + format + "' (only coordinate)", line_no, source);
        if (field == "pattern") throw MatrixMarketError("pattern-only matrices carry no values", line_no, source);
        if (field != "real" && field != "double") throw MatrixMarketError("unsupported field '" + field + "' (only real)", line_no, source);
        if (symmetry == "symmetric") {
            symmetric = true;
        } else if (symmetry != "general") {
            throw MatrixMarketError("unsupported symmetry '" + symmetry + "'", line_no, source);
        }
    }

    // Skip comments and blank lines up to the size line.
    while (true) {
        if (!std::getline(in, line)) throw MatrixMarketError("missing size line", line_no + 1, source);
        ++line_no;
        if (!line.empty() && line[0] == '%') continue;
        if (blank(line)) continue;
        break;
    }
    Index n_rows = 0;
    Index n_cols = 0;
    Index n_entries = 0;
    {
        std::istringstream ss(line);
        std::string a, b, c, extra;
        if (!(ss >> a >> b >> c) || (ss >> extra)) throw MatrixMarketError("size line must hold 'rows cols nnz'", line_no, source);
        n_rows = parse_dim(a, line_no, "row count", source);
        n_cols = parse_dim(b, line_no, "column count", source);
        n_entries = parse_dim(c, line_no, "entry count", source);
    }
    if (symmetric && n_rows != n_cols) throw MatrixMarketError("symmetric matrix must be square", line_no, source);

    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(n_entries) * (symmetric ? 2 : 1));
    Index read = 0;
    while (read < n_entries) {
        if (!std::getline(in, line)) {
            throw MatrixMarketError("expected " + std::to_string(n_entries) + " entries, found " + std::to_string(read), line_no + 1, source);
        }
        ++line_no;
        if (!line.empty() && line[0] == '%') continue;
        if (blank(line)) continue;
        std::istringstream es(line);
        std::string si, sj, sv;
        if (!(es >> si >> sj >> sv)) throw MatrixMarketError("entry must hold 'row col value'", line_no, source);
        const Index i = parse_dim(si, line_no, "row index", source);
        const Index j = parse_dim(sj, line_no, "column index", source);
        if (i < 1 || i > n_rows || j < 1 || j > n_cols) {
            throw MatrixMarketError("entry (" + si + ", " + sj + ") outside " + std::to_string(n_rows) + "x" + std::to_string(n_cols), line_no, source);
        }
        double v = 0.0;
        try {
            std::size_t used = 0;
            v = std::stod(sv, &used);
            if (used != sv.size()) throw std::invalid_argument(sv);
        } catch (const std::exception&) {
            throw MatrixMarketError("invalid value '" + sv + "'", line_no, source);
        }
        triplets.push_back({i - 1, j - 1, v});
        if (symmetric && i != j) triplets.push_back({j - 1, i - 1, v});
        ++read;
    }
    while (std::getline(in, line)) {
        ++line_no;
        if (!blank(line) && line[0] != '%') throw MatrixMarketError("trailing data after declared entries", line_no, source);
    }
    return SparseMatrix::from_triplets(n_rows, n_cols, std::move(triplets));
}

SparseMatrix load_matrix_market(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MatrixMarketError("cannot open '" + path.string() + "'", 0);
    return read_matrix_market(in, path.string());
}

void write_matrix_market(const SparseMatrix& a, std::ostream& out) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << a.n_rows() << ' ' << a.n_cols() << ' ' << a.nnz() << '\n';
    out << std::setprecision(17);
    for (Index j = 0; j < a.n_cols(); ++j) {
        auto rows = a.col_rows(j);
        auto vals = a.col_values(j);
        for (std::size_t t = 0; t < rows.size(); ++t) out << rows[t] + 1 << ' ' << j + 1 << ' ' << vals[t] << '\n';
    }
}

void save_matrix_market(const SparseMatrix& a, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    write_matrix_market(a, out);
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void write_pattern(const SparseMatrix& a, std::ostream& out) {
    out << "%%MatrixMarket matrix coordinate pattern general\n";
    out << a.n_rows() << ' ' << a.n_cols() << ' ' << a.nnz() << '\n';
    for (Index j = 0; j < a.n_cols(); ++j) {
        for (Index i : a.col_rows(j)) out << i + 1 << ' ' << j + 1 << '\n';
    }
}

void pattern_dump(const SparseMatrix& a, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    write_pattern(a, out);
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace sai
