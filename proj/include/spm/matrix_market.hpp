#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>

#include "spm/operators.hpp"

namespace spm {

/// Parse failure with the 1-based line it was detected on.
class MatrixMarketError : public std::runtime_error {
public:
    MatrixMarketError(std::size_t line, const std::string& what)
        : std::runtime_error("matrix market, line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/**
 * Reads a `%%MatrixMarket matrix` file. Coordinate files produce a
 * compressed-column operator, array files a dense one. The `symmetric`
 * qualifier is honored (lower triangle stored, expanded on read); `general`
 * files must still contain a symmetric matrix or the read fails. Nonsquare
 * dimensions, malformed headers, and nonsymmetric data raise
 * MatrixMarketError with the offending line.
 */
std::unique_ptr<SpdOperator> read_matrix_market(std::istream& in);
std::unique_ptr<SpdOperator> read_matrix_market(const std::string& path);

/**
 * Writes an operator. Dense operators use the array format, everything
 * else the coordinate format with the `symmetric` qualifier (stored lower
 * triangle). Values round-trip bit exactly.
 */
void write_matrix_market(const SpdOperator& op, std::ostream& out);
void write_matrix_market(const SpdOperator& op, const std::string& path);

}  // namespace spm
