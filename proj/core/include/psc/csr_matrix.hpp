#pragma once

#include <vector>

namespace psc {

// Compressed sparse row storage. Column indices are sorted and unique within
// each row; explicit zeros are kept as stored entries.
struct CsrMatrix {
    int n_rows = 0;
    int n_cols = 0;
    std::vector<int> row_offsets;  // size n_rows + 1
    std::vector<int> col_indices;  // size nnz
    std::vector<double> values;    // size nnz

    int nnz() const { return static_cast<int>(col_indices.size()); }
    int row_extent(int row) const { return row_offsets[row + 1] - row_offsets[row]; }

    bool operator==(const CsrMatrix&) const = default;
};

struct Triplet {
    int row = 0;
    int col = 0;
    double value = 0.0;
};

// Sorts by (row, col) keeping file order among duplicates, then sums
// duplicates into a single entry.
CsrMatrix csr_from_triplets(int n_rows, int n_cols, std::vector<Triplet> entries);

// Throws std::invalid_argument when the structure is inconsistent (offset
// monotonicity, index ranges, per-row column ordering).
void validate_csr(const CsrMatrix& a);

bool is_lower_triangular(const CsrMatrix& a);

// A lower triangular matrix with an explicitly stored, nonzero diagonal.
// Instances only come out of lower_triangular() or adopt(), so the invariant
// holds everywhere one is accepted.
class TriangularMatrix {
  public:
    static TriangularMatrix adopt(CsrMatrix a);

    const CsrMatrix& csr() const { return m_; }
    int n() const { return m_.n_rows; }

    // Value index of the diagonal entry of `row` (last entry of the row).
    int diag_pos(int row) const { return m_.row_offsets[row + 1] - 1; }

  private:
    TriangularMatrix() = default;
    CsrMatrix m_;
};

// Extracts the lower triangle of `a` including the diagonal. Throws when `a`
// is not square or when any diagonal entry is missing or zero.
TriangularMatrix lower_triangular(const CsrMatrix& a);

}  // namespace psc
