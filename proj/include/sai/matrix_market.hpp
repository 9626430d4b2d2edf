#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "sai/sparse_matrix.hpp"

namespace sai {

/// Parse failure in a Matrix Market stream. `line()` is 1-based, 0 when the
/// failure is not tied to a line (e.g. the file could not be opened).
class MatrixMarketError : public std::runtime_error {
public:
    MatrixMarketError(const std::string& msg, std::size_t line, const std::string& source = {})
        : std::runtime_error((source.empty() ? "" : source + ": ") +
                             (line ? "line " + std::to_string(line) + ": " + msg : msg)),
          line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Reads a `coordinate real general|symmetric` Matrix Market file. Symmetric
/// input is expanded, duplicates are summed and exact zeros dropped.
SparseMatrix load_matrix_market(const std::filesystem::path& path);
/// `source` names the stream in error messages.
SparseMatrix read_matrix_market(std::istream& in, const std::string& source = {});

/// Writes `coordinate real general` with 17 significant digits.
void write_matrix_market(const SparseMatrix& a, std::ostream& out);
void save_matrix_market(const SparseMatrix& a, const std::filesystem::path& path);

/// Writes the stored positions of `a` as a `coordinate pattern general` file,
/// entries in column-major order.
void write_pattern(const SparseMatrix& a, std::ostream& out);
void pattern_dump(const SparseMatrix& a, const std::filesystem::path& path);

}  // namespace sai
