#include "psc/codelet.hpp"

#include <stdexcept>

namespace psc {

const char* codelet_kind_name(CodeletKind k) {
    switch (k) {
        case CodeletKind::Blas: return "BLAS";
        case CodeletKind::PscI: return "PSC_I";
        default: return "PSC_II";
    }
}

int table_count(CodeletKind k) {
    switch (k) {
        case CodeletKind::Blas: return 0;
        case CodeletKind::PscI: return 1;
        default: return 2;
    }
}

CodeletKind kind_from_descriptors(const AccessDesc& out, const AccessDesc& mat,
                                  const AccessDesc& vec) {
    int tables = int(out.is_table()) + int(mat.is_table()) + int(vec.is_table());
    switch (tables) {
        case 0: return CodeletKind::Blas;
        case 1: return CodeletKind::PscI;
        case 2: return CodeletKind::PscII;
        default: throw std::invalid_argument("codelet: all three descriptors are tables");
    }
}

namespace {

long long descriptor_size(const AccessDesc& d, int dims) {
    if (d.is_table()) {
        return static_cast<long long>(d.table.size());
    }
    return dims;
}

}  // namespace

CostModelResult codelet_cost(const Codelet& c) {
    // A strided descriptor loads one coefficient per dimension the codelet
    // actually iterates over; a 1x1 codelet still loads its base.
    int dims = (c.outer_extent > 1 ? 1 : 0) + (c.inner_extent > 1 ? 1 : 0);
    if (dims == 0) dims = 1;
    CostModelResult r;
    r.ops = c.ops();
    r.fns = 3;
    r.descriptors = descriptor_size(c.out, dims) + descriptor_size(c.mat, dims) +
                    descriptor_size(c.vec, dims);
    r.total = r.ops + r.fns + r.descriptors;
    return r;
}

long long plan_cost(const std::vector<Codelet>& cs) {
    long long total = 0;
    for (const Codelet& c : cs) total += codelet_cost(c).total;
    return total;
}

}  // namespace psc
