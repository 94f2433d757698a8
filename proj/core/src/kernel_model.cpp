#include "psc/kernel_model.hpp"

#include <ostream>
#include <stdexcept>
#include <string>

namespace psc {

const char* kernel_name(KernelKind k) {
    return k == KernelKind::Spmv ? "spmv" : "sptrsv";
}

const char* role_name(AccessRole r) {
    switch (r) {
        case AccessRole::Out: return "out";
        case AccessRole::Mat: return "mat";
        default: return "vec";
    }
}

const char* codelet_class_name(CodeletClass c) {
    switch (c) {
        case CodeletClass::Blas: return "BLAS";
        case CodeletClass::PscI: return "PSC_I";
        case CodeletClass::PscII: return "PSC_II";
        default: return "NONE";
    }
}

const AccessFunction& KernelModel::fn(AccessRole r) const {
    switch (r) {
        case AccessRole::Out: return out;
        case AccessRole::Mat: return mat;
        default: return vec;
    }
}

KernelModel compute_access_functions(KernelKind kernel, const CsrMatrix& a) {
    validate_csr(a);
    KernelModel m;
    m.kernel = kernel;
    m.space.n_rows = a.n_rows;
    m.space.extents.resize(a.n_rows);
    m.space.offsets.assign(a.n_rows + 1, 0);

    if (kernel == KernelKind::Sptrsv) {
        // Adoption validates squareness, triangularity and the diagonal.
        TriangularMatrix::adopt(a);
        m.diag_positions.resize(a.n_rows);
    }

    for (int i = 0; i < a.n_rows; ++i) {
        int extent = a.row_extent(i);
        if (kernel == KernelKind::Sptrsv) {
            m.diag_positions[i] = a.row_offsets[i + 1] - 1;
            extent -= 1;  // the diagonal entry belongs to the finalize step
        }
        m.space.extents[i] = extent;
        m.space.offsets[i + 1] = m.space.offsets[i] + extent;
    }

    int points = m.space.points();
    m.out = {AccessRole::Out, std::vector<int>(points)};
    m.mat = {AccessRole::Mat, std::vector<int>(points)};
    m.vec = {AccessRole::Vec, std::vector<int>(points)};
    for (int i = 0; i < a.n_rows; ++i) {
        for (int j = 0; j < m.space.extents[i]; ++j) {
            int flat = m.space.flat(i, j);
            int k = a.row_offsets[i] + j;
            m.out.indices[flat] = i;
            m.mat.indices[flat] = k;
            m.vec.indices[flat] = a.col_indices[k];
        }
    }
    return m;
}

FopdTable compute_fopd(const KernelModel& m, AccessRole role, const RegionRect& region) {
    if (region.row_count < 1 || region.inner_count < 1) {
        throw std::invalid_argument("compute_fopd: empty region");
    }
    if (region.row_begin < 0 || region.row_begin + region.row_count > m.space.n_rows ||
        region.inner_begin < 0) {
        throw std::invalid_argument("compute_fopd: region outside iteration space");
    }
    for (int i = 0; i < region.row_count; ++i) {
        if (region.inner_begin + region.inner_count >
            m.space.extents[region.row_begin + i]) {
            throw std::invalid_argument("compute_fopd: region exceeds extent of row " +
                                        std::to_string(region.row_begin + i));
        }
    }

    const AccessFunction& f = m.fn(role);
    auto at = [&](int i, int j) {
        return m.index_at(f, region.row_begin + i, region.inner_begin + j);
    };

    FopdTable t;
    t.region = region;
    t.d_outer.reserve(static_cast<std::size_t>(region.row_count - 1) * region.inner_count);
    for (int i = 0; i + 1 < region.row_count; ++i) {
        for (int j = 0; j < region.inner_count; ++j) {
            t.d_outer.push_back(at(i + 1, j) - at(i, j));
        }
    }
    t.d_inner.reserve(static_cast<std::size_t>(region.row_count) * (region.inner_count - 1));
    for (int i = 0; i < region.row_count; ++i) {
        for (int j = 0; j + 1 < region.inner_count; ++j) {
            t.d_inner.push_back(at(i, j + 1) - at(i, j));
        }
    }
    for (int d : t.d_outer) {
        if (d != t.d_outer.front()) {
            t.strided_outer = false;
            break;
        }
    }
    for (int d : t.d_inner) {
        if (d != t.d_inner.front()) {
            t.strided_inner = false;
            break;
        }
    }
    return t;
}

CodeletClass classify_codelet(const FopdTable& out, const FopdTable& mat, const FopdTable& vec) {
    int strided = int(out.strided()) + int(mat.strided()) + int(vec.strided());
    switch (strided) {
        case 3: return CodeletClass::Blas;
        case 2: return CodeletClass::PscI;
        case 1: return CodeletClass::PscII;
        default: return CodeletClass::None;
    }
}

namespace {

void dump_diffs(std::ostream& os, const std::vector<int>& d) {
    if (d.empty()) {
        os << " (none)";
        return;
    }
    for (int v : d) os << " " << v;
}

}  // namespace

void dump_region_analysis(std::ostream& os, const KernelModel& m, const RegionRect& region) {
    os << "kernel " << kernel_name(m.kernel) << "\n";
    os << "region rows [" << region.row_begin << "," << region.row_begin + region.row_count
       << ") inner [" << region.inner_begin << ","
       << region.inner_begin + region.inner_count << ")\n";
    for (AccessRole role : {AccessRole::Out, AccessRole::Mat, AccessRole::Vec}) {
        const AccessFunction& f = m.fn(role);
        for (int i = 0; i < region.row_count; ++i) {
            int row = region.row_begin + i;
            os << role_name(role) << " row " << row << " :";
            for (int j = 0; j < region.inner_count; ++j) {
                os << " " << m.index_at(f, row, region.inner_begin + j);
            }
            os << "\n";
        }
    }
    FopdTable fopds[3];
    for (AccessRole role : {AccessRole::Out, AccessRole::Mat, AccessRole::Vec}) {
        FopdTable t = compute_fopd(m, role, region);
        fopds[static_cast<int>(role)] = t;
        os << "fopd " << role_name(role) << " d_outer :";
        dump_diffs(os, t.d_outer);
        os << "\n";
        os << "fopd " << role_name(role) << " d_inner :";
        dump_diffs(os, t.d_inner);
        os << "\n";
        os << "fopd " << role_name(role) << " strided : " << (t.strided() ? "yes" : "no")
           << "\n";
    }
    os << "class " << codelet_class_name(classify_codelet(fopds[0], fopds[1], fopds[2]))
       << "\n";
}

}  // namespace psc
