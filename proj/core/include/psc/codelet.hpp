#pragma once

#include <cstdint>
#include <vector>

namespace psc {

enum class CodeletKind { Blas, PscI, PscII };

const char* codelet_kind_name(CodeletKind k);

struct StridedAccess {
    int base = 0;
    int stride_outer = 0;
    int stride_inner = 0;

    int at(int i, int j) const { return base + i * stride_outer + j * stride_inner; }
    bool operator==(const StridedAccess&) const = default;
};

// Descriptor of one access function of a codelet: either a strided map or an
// explicit offset table. Table layouts: InnerTable is indexed by the inner
// position (shared across rows), OuterTable by the outer position, PointTable
// row-major by both.
struct AccessDesc {
    enum class Form { Strided, InnerTable, OuterTable, PointTable };

    Form form = Form::Strided;
    StridedAccess lin;
    std::vector<int> table;

    bool is_table() const { return form != Form::Strided; }

    int at(int i, int j, int inner_extent) const {
        switch (form) {
            case Form::Strided: return lin.at(i, j);
            case Form::InnerTable: return table[j];
            case Form::OuterTable: return table[i];
            default: return table[i * inner_extent + j];
        }
    }

    static AccessDesc strided(int base, int stride_outer, int stride_inner) {
        return {Form::Strided, {base, stride_outer, stride_inner}, {}};
    }
    static AccessDesc inner_table(std::vector<int> t) {
        return {Form::InnerTable, {}, std::move(t)};
    }
    static AccessDesc outer_table(std::vector<int> t) {
        return {Form::OuterTable, {}, std::move(t)};
    }
    static AccessDesc point_table(std::vector<int> t) {
        return {Form::PointTable, {}, std::move(t)};
    }

    bool operator==(const AccessDesc&) const = default;
};

// One vectorizable unit of work over an m x n iteration sub-space:
//   for i in [0, m): for j in [0, n): accum[out(i,j)] += Ax[mat(i,j)] * x[vec(i,j)]
// The kind mirrors the descriptor shapes: Blas has no offset table, PscI has
// exactly one, PscII exactly two.
struct Codelet {
    CodeletKind kind = CodeletKind::Blas;
    int outer_extent = 0;  // m
    int inner_extent = 0;  // n
    AccessDesc out, mat, vec;

    long long ops() const { return 1LL * outer_extent * inner_extent; }
    bool operator==(const Codelet&) const = default;
};

// Number of offset tables implied by each kind.
int table_count(CodeletKind k);

// Kind implied by the descriptor shapes; throws std::invalid_argument when
// all three descriptors are tables (not one of the three forms).
CodeletKind kind_from_descriptors(const AccessDesc& out, const AccessDesc& mat,
                                  const AccessDesc& vec);

struct CostModelResult {
    long long ops = 0;         // |p| = m * n
    int fns = 0;               // access-function count, 3
    long long descriptors = 0; // sum of |s_d| over the three descriptors
    long long total = 0;       // ops + fns + descriptors
};

// Descriptor sizes: a strided descriptor costs one coefficient per codelet
// dimension with extent > 1 (at least 1); an offset table costs its length.
CostModelResult codelet_cost(const Codelet& c);

long long plan_cost(const std::vector<Codelet>& cs);

}  // namespace psc
