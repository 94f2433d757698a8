#pragma once

#include <iosfwd>
#include <vector>

#include "psc/csr_matrix.hpp"

namespace psc {

enum class KernelKind { Spmv, Sptrsv };

const char* kernel_name(KernelKind k);

// Two dimensional iteration space: outer index i0 is the row, inner index i1
// runs over that row's operations. Rows may have different extents.
struct IterationSpace {
    int n_rows = 0;
    std::vector<int> extents;  // per-row inner extent
    std::vector<int> offsets;  // prefix sums, size n_rows + 1

    int points() const { return offsets.back(); }
    int flat(int row, int pos) const { return offsets[row] + pos; }
};

enum class AccessRole { Out, Mat, Vec };

const char* role_name(AccessRole r);

// One memory access function, tabulated per iteration point in the layout of
// IterationSpace::offsets. Entries are indices into the role's data space:
// Out -> result vector, Mat -> stored values, Vec -> gathered vector.
struct AccessFunction {
    AccessRole role = AccessRole::Out;
    std::vector<int> indices;
};

// Access functions of one kernel over one matrix.
//
// Spmv: every stored entry is one operation; Out(i0,i1)=i0,
// Mat(i0,i1)=row_offsets[i0]+i1, Vec(i0,i1)=col_indices[Mat(i0,i1)].
//
// Sptrsv (lower triangular, diagonal stored last per row): operations cover
// only the off-diagonal prefix of each row, the same three functions apply,
// and diag_positions[i0] records the value index of the diagonal used by the
// per-row finalize step x[i0] = (b[i0] - acc[i0]) / Ax[diag_positions[i0]].
struct KernelModel {
    KernelKind kernel = KernelKind::Spmv;
    IterationSpace space;
    AccessFunction out, mat, vec;
    std::vector<int> diag_positions;  // empty for Spmv

    int index_at(const AccessFunction& f, int row, int pos) const {
        return f.indices[space.flat(row, pos)];
    }
    const AccessFunction& fn(AccessRole r) const;
};

KernelModel compute_access_functions(KernelKind kernel, const CsrMatrix& a);

// Rectangular region of the iteration space: rows [row_begin, row_begin +
// row_count) crossed with inner positions [inner_begin, inner_begin +
// inner_count).
struct RegionRect {
    int row_begin = 0;
    int row_count = 0;
    int inner_begin = 0;
    int inner_count = 0;

    bool operator==(const RegionRect&) const = default;
};

// First order partial differences of one access function over a region.
// d_inner[(i, j)] = f(i, j+1) - f(i, j) for j in the first inner_count - 1
// positions; d_outer[(i, j)] = f(i+1, j) - f(i, j) for i in the first
// row_count - 1 rows (indices relative to the region corner). A dimension
// with no defined differences is strided vacuously.
struct FopdTable {
    RegionRect region;
    std::vector<int> d_outer;  // (row_count - 1) * inner_count, row-major
    std::vector<int> d_inner;  // row_count * (inner_count - 1), row-major
    bool strided_outer = true;
    bool strided_inner = true;

    bool strided() const { return strided_outer && strided_inner; }
    int outer_stride() const { return d_outer.empty() ? 0 : d_outer.front(); }
    int inner_stride() const { return d_inner.empty() ? 0 : d_inner.front(); }
};

// Throws std::invalid_argument when the region is empty or not contained in
// the iteration space.
FopdTable compute_fopd(const KernelModel& m, AccessRole role, const RegionRect& region);

// Codelet form implied by how many of the three access functions are strided
// over a region: 3 -> Blas, 2 -> PscI, 1 -> PscII.
enum class CodeletClass { Blas, PscI, PscII, None };

const char* codelet_class_name(CodeletClass c);

CodeletClass classify_codelet(const FopdTable& out, const FopdTable& mat, const FopdTable& vec);

// Human readable dump of the tabulated functions, their differences and the
// resulting classification over one region.
void dump_region_analysis(std::ostream& os, const KernelModel& m, const RegionRect& region);

}  // namespace psc
