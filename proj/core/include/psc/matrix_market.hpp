#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "psc/csr_matrix.hpp"

namespace psc {

class ParseError : public std::runtime_error {
  public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const { return line_; }

  private:
    int line_;
};

// Reads Matrix Market coordinate format: real, integer or pattern fields,
// general or symmetric symmetry. Symmetric inputs are expanded (off-diagonal
// entries mirrored), pattern entries get value 1.0, duplicates are summed and
// indices converted to 0-based. Throws ParseError with the offending 1-based
// line number.
CsrMatrix read_matrix_market(std::istream& in);
CsrMatrix read_matrix_market_file(const std::string& path);

// Writes coordinate/real/general with 1-based indices.
void write_matrix_market(std::ostream& out, const CsrMatrix& a);
void write_matrix_market_file(const std::string& path, const CsrMatrix& a);

}  // namespace psc
