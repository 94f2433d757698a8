#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "psc/kernel_model.hpp"
#include "psc/pattern_gen.hpp"

using namespace psc;

namespace {

// Independent stridedness oracle: fit f(i,j) = c + a*i + b*j from the region
// corner and check every point.
bool affine_fit_ok(const KernelModel& m, AccessRole role, const RegionRect& r) {
    const AccessFunction& f = m.fn(role);
    auto at = [&](int i, int j) {
        return m.index_at(f, r.row_begin + i, r.inner_begin + j);
    };
    int c = at(0, 0);
    int a = r.row_count > 1 ? at(1, 0) - at(0, 0) : 0;
    int b = r.inner_count > 1 ? at(0, 1) - at(0, 0) : 0;
    for (int i = 0; i < r.row_count; ++i) {
        for (int j = 0; j < r.inner_count; ++j) {
            if (at(i, j) != c + a * i + b * j) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("spmv access functions tabulate row, storage position and column") {
    CsrMatrix a = scattered_gather(3, {0, 2, 5});
    KernelModel m = compute_access_functions(KernelKind::Spmv, a);
    CHECK(m.space.n_rows == 3);
    CHECK(m.space.extents == std::vector<int>{3, 3, 3});
    CHECK(m.space.points() == 9);
    CHECK(m.diag_positions.empty());
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(m.index_at(m.out, i, j) == i);
            CHECK(m.index_at(m.mat, i, j) == a.row_offsets[i] + j);
            CHECK(m.index_at(m.vec, i, j) == a.col_indices[a.row_offsets[i] + j]);
        }
    }
}

TEST_CASE("sptrsv covers the off-diagonal prefix and records diagonals") {
    CsrMatrix l = banded(4, 1, true);
    KernelModel m = compute_access_functions(KernelKind::Sptrsv, l);
    CHECK(m.space.extents == std::vector<int>{0, 1, 1, 1});
    CHECK(m.diag_positions == std::vector<int>{0, 2, 4, 6});
    for (int i = 1; i < 4; ++i) {
        CHECK(m.index_at(m.out, i, 0) == i);
        CHECK(m.index_at(m.vec, i, 0) == i - 1);
        CHECK(m.index_at(m.mat, i, 0) == l.row_offsets[i]);
    }
}

TEST_CASE("sptrsv model rejects non-triangular input") {
    CHECK_THROWS_AS(compute_access_functions(KernelKind::Sptrsv, dense_block(3)),
                    std::invalid_argument);
    CsrMatrix zero_diag =
        csr_from_triplets(2, 2, {{0, 0, 1.0}, {1, 0, 1.0}, {1, 1, 0.0}});
    CHECK_THROWS_AS(compute_access_functions(KernelKind::Sptrsv, zero_diag),
                    std::invalid_argument);
}

TEST_CASE("partial differences of the worked 3x3 gather region") {
    KernelModel m = compute_access_functions(KernelKind::Spmv, scattered_gather(3, {0, 2, 5}));
    RegionRect region{0, 3, 0, 3};

    FopdTable mat = compute_fopd(m, AccessRole::Mat, region);
    CHECK(mat.d_inner[0] == 1);  // inner difference at the region corner
    CHECK(mat.d_outer[0] == 3);  // outer difference at the region corner
    CHECK(mat.strided());
    CHECK(mat.inner_stride() == 1);
    CHECK(mat.outer_stride() == 3);

    FopdTable vec = compute_fopd(m, AccessRole::Vec, region);
    // row 1, inner position 1: differences 2 then 3 break stridedness
    CHECK(vec.d_inner[1 * 2 + 0] == 2);
    CHECK(vec.d_inner[1 * 2 + 1] == 3);
    CHECK_FALSE(vec.strided_inner);
    CHECK(vec.strided_outer);
    CHECK_FALSE(vec.strided());

    FopdTable out = compute_fopd(m, AccessRole::Out, region);
    CHECK(out.strided());
    CHECK(classify_codelet(out, mat, vec) == CodeletClass::PscI);
}

TEST_CASE("constant access function is strided with zero differences") {
    KernelModel m = compute_access_functions(KernelKind::Spmv, scattered_gather(2, {1, 4}));
    FopdTable out = compute_fopd(m, AccessRole::Out, {0, 1, 0, 2});
    CHECK(out.d_outer.empty());
    CHECK(out.d_inner == std::vector<int>{0});
    CHECK(out.strided());
    CHECK(out.outer_stride() == 0);
}

TEST_CASE("classification counts strided functions") {
    KernelModel dense = compute_access_functions(KernelKind::Spmv, dense_block(3));
    RegionRect r{0, 3, 0, 3};
    FopdTable out = compute_fopd(dense, AccessRole::Out, r);
    FopdTable mat = compute_fopd(dense, AccessRole::Mat, r);
    FopdTable vec = compute_fopd(dense, AccessRole::Vec, r);
    CHECK(classify_codelet(out, mat, vec) == CodeletClass::Blas);

    // ragged 2-row pattern: row lengths 2 and 3 break MAT across rows, and
    // scattered columns break VEC within rows
    CsrMatrix ragged = csr_from_triplets(
        2, 8, {{0, 0, 1.0}, {0, 3, 1.0}, {1, 1, 1.0}, {1, 5, 1.0}, {1, 7, 1.0}});
    KernelModel m = compute_access_functions(KernelKind::Spmv, ragged);
    RegionRect two_rows{0, 2, 0, 2};
    FopdTable o2 = compute_fopd(m, AccessRole::Out, two_rows);
    FopdTable m2 = compute_fopd(m, AccessRole::Mat, two_rows);
    FopdTable v2 = compute_fopd(m, AccessRole::Vec, two_rows);
    CHECK(m2.strided());  // offsets 0,1 / 2,3: equal differences
    CHECK_FALSE(v2.strided());
    CHECK(classify_codelet(o2, m2, v2) == CodeletClass::PscI);

    // single scattered row: OUT and MAT strided, VEC not
    RegionRect one_row{1, 1, 0, 3};
    FopdTable o1 = compute_fopd(m, AccessRole::Out, one_row);
    FopdTable m1 = compute_fopd(m, AccessRole::Mat, one_row);
    FopdTable v1 = compute_fopd(m, AccessRole::Vec, one_row);
    CHECK(classify_codelet(o1, m1, v1) == CodeletClass::PscI);
}

TEST_CASE("compute_fopd validates the region") {
    KernelModel m = compute_access_functions(KernelKind::Spmv, dense_block(3));
    CHECK_THROWS_AS(compute_fopd(m, AccessRole::Out, {0, 0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(compute_fopd(m, AccessRole::Out, {0, 1, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(compute_fopd(m, AccessRole::Out, {2, 2, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(compute_fopd(m, AccessRole::Out, {0, 1, 2, 2}), std::invalid_argument);
}

TEST_CASE("per-dimension stridedness matches an affine fit on random regions") {
    std::mt19937_64 rng(11);
    CsrMatrix a = random_uniform(32, 32, 0.4, 5);
    KernelModel m = compute_access_functions(KernelKind::Spmv, a);
    int tested = 0;
    for (int trial = 0; trial < 400 && tested < 100; ++trial) {
        int row = static_cast<int>(rng() % 30);
        int rows = 1 + static_cast<int>(rng() % 3);
        if (row + rows > 32) continue;
        int max_inner = m.space.extents[row];
        for (int i = 1; i < rows; ++i) {
            max_inner = std::min(max_inner, m.space.extents[row + i]);
        }
        if (max_inner < 1) continue;
        int inner = 1 + static_cast<int>(rng() % max_inner);
        RegionRect r{row, rows, 0, inner};
        for (AccessRole role : {AccessRole::Out, AccessRole::Mat, AccessRole::Vec}) {
            CHECK(compute_fopd(m, role, r).strided() == affine_fit_ok(m, role, r));
        }
        ++tested;
    }
    CHECK(tested >= 50);
}

TEST_CASE("mat is strided along every single row") {
    CsrMatrix a = random_uniform(24, 24, 0.3, 13);
    KernelModel m = compute_access_functions(KernelKind::Spmv, a);
    for (int i = 0; i < a.n_rows; ++i) {
        if (m.space.extents[i] == 0) continue;
        FopdTable t = compute_fopd(m, AccessRole::Mat, {i, 1, 0, m.space.extents[i]});
        CHECK(t.strided());
    }
}

TEST_CASE("region dump matches the golden file") {
    KernelModel m = compute_access_functions(KernelKind::Spmv, scattered_gather(3, {0, 2, 5}));
    std::ostringstream got;
    dump_region_analysis(got, m, {0, 3, 0, 3});
    std::ifstream in(std::string(PSC_TEST_DIR) + "/golden/region_scattered_gather.txt");
    REQUIRE(in.good());
    std::stringstream want;
    want << in.rdbuf();
    CHECK(got.str() == want.str());
}
