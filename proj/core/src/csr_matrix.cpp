#include "psc/csr_matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace psc {

CsrMatrix csr_from_triplets(int n_rows, int n_cols, std::vector<Triplet> entries) {
    if (n_rows < 0 || n_cols < 0) {
        throw std::invalid_argument("csr_from_triplets: negative dimension");
    }
    for (const Triplet& t : entries) {
        if (t.row < 0 || t.row >= n_rows || t.col < 0 || t.col >= n_cols) {
            throw std::invalid_argument("csr_from_triplets: entry (" + std::to_string(t.row) +
                                        ", " + std::to_string(t.col) + ") out of range");
        }
    }
    std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    CsrMatrix a;
    a.n_rows = n_rows;
    a.n_cols = n_cols;
    a.row_offsets.assign(n_rows + 1, 0);
    a.col_indices.reserve(entries.size());
    a.values.reserve(entries.size());

    std::size_t i = 0;
    for (int row = 0; row < n_rows; ++row) {
        while (i < entries.size() && entries[i].row == row) {
            int col = entries[i].col;
            double sum = 0.0;
            while (i < entries.size() && entries[i].row == row && entries[i].col == col) {
                sum += entries[i].value;
                ++i;
            }
            a.col_indices.push_back(col);
            a.values.push_back(sum);
        }
        a.row_offsets[row + 1] = static_cast<int>(a.col_indices.size());
    }
    return a;
}

void validate_csr(const CsrMatrix& a) {
    if (a.n_rows < 0 || a.n_cols < 0) {
        throw std::invalid_argument("csr: negative dimension");
    }
    if (static_cast<int>(a.row_offsets.size()) != a.n_rows + 1) {
        throw std::invalid_argument("csr: row_offsets size mismatch");
    }
    if (a.row_offsets.front() != 0 || a.row_offsets.back() != a.nnz()) {
        throw std::invalid_argument("csr: row_offsets endpoints mismatch");
    }
    if (a.values.size() != a.col_indices.size()) {
        throw std::invalid_argument("csr: values/col_indices size mismatch");
    }
    for (int row = 0; row < a.n_rows; ++row) {
        if (a.row_offsets[row] > a.row_offsets[row + 1]) {
            throw std::invalid_argument("csr: row_offsets not monotone at row " +
                                        std::to_string(row));
        }
        for (int k = a.row_offsets[row]; k < a.row_offsets[row + 1]; ++k) {
            if (a.col_indices[k] < 0 || a.col_indices[k] >= a.n_cols) {
                throw std::invalid_argument("csr: column out of range in row " +
                                            std::to_string(row));
            }
            if (k > a.row_offsets[row] && a.col_indices[k] <= a.col_indices[k - 1]) {
                throw std::invalid_argument("csr: columns not strictly increasing in row " +
                                            std::to_string(row));
            }
        }
    }
}

bool is_lower_triangular(const CsrMatrix& a) {
    for (int row = 0; row < a.n_rows; ++row) {
        for (int k = a.row_offsets[row]; k < a.row_offsets[row + 1]; ++k) {
            if (a.col_indices[k] > row) return false;
        }
    }
    return true;
}

TriangularMatrix TriangularMatrix::adopt(CsrMatrix a) {
    validate_csr(a);
    if (a.n_rows != a.n_cols) {
        throw std::invalid_argument("triangular: matrix not square");
    }
    if (!is_lower_triangular(a)) {
        throw std::invalid_argument("triangular: entry above the diagonal");
    }
    for (int row = 0; row < a.n_rows; ++row) {
        int last = a.row_offsets[row + 1] - 1;
        if (last < a.row_offsets[row] || a.col_indices[last] != row) {
            throw std::invalid_argument("triangular: missing diagonal at row " +
                                        std::to_string(row));
        }
        if (a.values[last] == 0.0) {
            throw std::invalid_argument("triangular: zero diagonal at row " +
                                        std::to_string(row));
        }
    }
    TriangularMatrix t;
    t.m_ = std::move(a);
    return t;
}

TriangularMatrix lower_triangular(const CsrMatrix& a) {
    validate_csr(a);
    if (a.n_rows != a.n_cols) {
        throw std::invalid_argument("lower_triangular: matrix not square");
    }
    CsrMatrix l;
    l.n_rows = a.n_rows;
    l.n_cols = a.n_cols;
    l.row_offsets.assign(a.n_rows + 1, 0);
    for (int row = 0; row < a.n_rows; ++row) {
        for (int k = a.row_offsets[row]; k < a.row_offsets[row + 1]; ++k) {
            if (a.col_indices[k] <= row) {
                l.col_indices.push_back(a.col_indices[k]);
                l.values.push_back(a.values[k]);
            }
        }
        l.row_offsets[row + 1] = static_cast<int>(l.col_indices.size());
    }
    return TriangularMatrix::adopt(std::move(l));
}

}  // namespace psc
