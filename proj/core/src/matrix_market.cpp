#include "psc/matrix_market.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

namespace psc {

namespace {

enum class Field { Real, Integer, Pattern };
enum class Symmetry { General, Symmetric };

bool blank(const std::string& s) {
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::string lowered(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

// Hands out non-blank, non-comment lines; line_no() is the 1-based physical
// number of the line just returned, or of end-of-file after next() fails.
class LineReader {
  public:
    LineReader(std::istream& in, int lines_consumed) : in_(in), line_no_(lines_consumed) {}

    bool next(std::string& line) {
        while (std::getline(in_, line)) {
            ++line_no_;
            if (!blank(line) && line[0] != '%') return true;
        }
        ++line_no_;
        return false;
    }

    int line_no() const { return line_no_; }

  private:
    std::istream& in_;
    int line_no_;
};

}  // namespace

CsrMatrix read_matrix_market(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(1, "empty input");
    }
    std::istringstream header(line);
    std::string banner, object, format, field_s, symmetry_s;
    header >> banner >> object >> format >> field_s >> symmetry_s;
    if (banner != "%%MatrixMarket" || lowered(object) != "matrix") {
        throw ParseError(1, "not a MatrixMarket matrix header");
    }
    if (lowered(format) != "coordinate") {
        throw ParseError(1, "unsupported format '" + format + "' (expected coordinate)");
    }
    Field field;
    field_s = lowered(field_s);
    if (field_s == "real") {
        field = Field::Real;
    } else if (field_s == "integer") {
        field = Field::Integer;
    } else if (field_s == "pattern") {
        field = Field::Pattern;
    } else {
        throw ParseError(1, "unsupported field '" + field_s + "'");
    }
    Symmetry symmetry;
    symmetry_s = lowered(symmetry_s);
    if (symmetry_s == "general") {
        symmetry = Symmetry::General;
    } else if (symmetry_s == "symmetric") {
        symmetry = Symmetry::Symmetric;
    } else {
        throw ParseError(1, "unsupported symmetry '" + symmetry_s + "'");
    }

    LineReader reader(in, 1);
    if (!reader.next(line)) {
        throw ParseError(reader.line_no(), "missing size line");
    }
    std::istringstream size_line(line);
    long long rows = -1, cols = -1, declared = -1;
    if (!(size_line >> rows >> cols >> declared) || rows < 0 || cols < 0 || declared < 0) {
        throw ParseError(reader.line_no(), "malformed size line");
    }
    std::string junk;
    if (size_line >> junk) {
        throw ParseError(reader.line_no(), "trailing characters on size line");
    }
    if (symmetry == Symmetry::Symmetric && rows != cols) {
        throw ParseError(reader.line_no(), "symmetric matrix must be square");
    }

    std::vector<Triplet> entries;
    entries.reserve(static_cast<std::size_t>(declared));
    for (long long k = 0; k < declared; ++k) {
        if (!reader.next(line)) {
            throw ParseError(reader.line_no(), "expected " + std::to_string(declared) +
                                                   " entries, got " + std::to_string(k));
        }
        int current = reader.line_no();
        std::istringstream entry(line);
        long long r = 0, c = 0;
        double v = 1.0;
        if (!(entry >> r >> c)) {
            throw ParseError(current, "malformed entry");
        }
        if (field == Field::Real) {
            if (!(entry >> v)) throw ParseError(current, "malformed real value");
        } else if (field == Field::Integer) {
            long long iv = 0;
            if (!(entry >> iv)) throw ParseError(current, "malformed integer value");
            v = static_cast<double>(iv);
        }
        if (entry >> junk) {
            throw ParseError(current, "trailing characters on entry");
        }
        if (r < 1 || r > rows || c < 1 || c > cols) {
            throw ParseError(current, "entry (" + std::to_string(r) + ", " + std::to_string(c) +
                                          ") out of range");
        }
        entries.push_back({static_cast<int>(r - 1), static_cast<int>(c - 1), v});
        if (symmetry == Symmetry::Symmetric && r != c) {
            entries.push_back({static_cast<int>(c - 1), static_cast<int>(r - 1), v});
        }
    }
    if (reader.next(line)) {
        throw ParseError(reader.line_no(), "more entries than declared");
    }
    return csr_from_triplets(static_cast<int>(rows), static_cast<int>(cols), std::move(entries));
}

CsrMatrix read_matrix_market_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const CsrMatrix& a) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << a.n_rows << " " << a.n_cols << " " << a.nnz() << "\n";
    out.precision(std::numeric_limits<double>::max_digits10);
    for (int row = 0; row < a.n_rows; ++row) {
        for (int k = a.row_offsets[row]; k < a.row_offsets[row + 1]; ++k) {
            out << row + 1 << " " << a.col_indices[k] + 1 << " " << a.values[k] << "\n";
        }
    }
}

void write_matrix_market_file(const std::string& path, const CsrMatrix& a) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    write_matrix_market(out, a);
}

}  // namespace psc
