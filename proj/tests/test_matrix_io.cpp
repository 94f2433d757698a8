#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "psc/csr_matrix.hpp"
#include "psc/matrix_market.hpp"
#include "psc/pattern_gen.hpp"

using namespace psc;

namespace {

CsrMatrix parse(const std::string& text) {
    std::istringstream in(text);
    return read_matrix_market(in);
}

int parse_error_line(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST_CASE("triplets are sorted and duplicates summed in file order") {
    CsrMatrix a = csr_from_triplets(
        2, 2, {{1, 0, 3.0}, {0, 1, 1.5}, {0, 1, 0.5}, {0, 0, 2.0}});
    CHECK(a.row_offsets == std::vector<int>{0, 2, 3});
    CHECK(a.col_indices == std::vector<int>{0, 1, 0});
    CHECK(a.values == std::vector<double>{2.0, 2.0, 3.0});
    CHECK_NOTHROW(validate_csr(a));
}

TEST_CASE("triplet entries outside the matrix are rejected") {
    CHECK_THROWS_AS(csr_from_triplets(2, 2, {{2, 0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(csr_from_triplets(2, 2, {{0, -1, 1.0}}), std::invalid_argument);
}

TEST_CASE("validate_csr rejects broken structures") {
    CsrMatrix a = csr_from_triplets(2, 2, {{0, 0, 1.0}, {1, 1, 1.0}});
    CsrMatrix bad = a;
    bad.col_indices[0] = 5;
    CHECK_THROWS_AS(validate_csr(bad), std::invalid_argument);
    bad = a;
    bad.row_offsets = {0, 2, 1};  // not monotone
    CHECK_THROWS_AS(validate_csr(bad), std::invalid_argument);
    bad = a;
    bad.row_offsets = {0, 1, 3};  // end point past the value array
    CHECK_THROWS_AS(validate_csr(bad), std::invalid_argument);
    bad = csr_from_triplets(1, 3, {{0, 0, 1.0}, {0, 2, 1.0}});
    std::swap(bad.col_indices[0], bad.col_indices[1]);
    CHECK_THROWS_AS(validate_csr(bad), std::invalid_argument);
}

TEST_CASE("symmetric input is expanded") {
    CsrMatrix a = parse(
        "%%MatrixMarket matrix coordinate real symmetric\n"
        "2 2 2\n"
        "1 1 2.0\n"
        "2 1 3.0\n");
    CHECK(a.n_rows == 2);
    CHECK(a.n_cols == 2);
    CHECK(a.row_offsets == std::vector<int>{0, 2, 3});
    CHECK(a.col_indices == std::vector<int>{0, 1, 0});
    CHECK(a.values == std::vector<double>{2.0, 3.0, 3.0});
}

TEST_CASE("pattern field stores 1.0 and expands symmetric entries") {
    CsrMatrix a = parse(
        "%%MatrixMarket matrix coordinate pattern symmetric\n"
        "3 3 2\n"
        "2 1\n"
        "3 3\n");
    CHECK(a.nnz() == 3);
    CHECK(a.values == std::vector<double>{1.0, 1.0, 1.0});
    CHECK(a.col_indices == std::vector<int>{1, 0, 2});
}

TEST_CASE("integer field parses to doubles") {
    CsrMatrix a = parse(
        "%%MatrixMarket matrix coordinate integer general\n"
        "2 2 2\n"
        "1 1 4\n"
        "2 2 -3\n");
    CHECK(a.values == std::vector<double>{4.0, -3.0});
}

TEST_CASE("duplicate entries in a file are summed") {
    CsrMatrix a = parse(
        "%%MatrixMarket matrix coordinate real general\n"
        "2 2 3\n"
        "1 1 1.0\n"
        "1 1 2.5\n"
        "2 1 1.0\n");
    CHECK(a.nnz() == 2);
    CHECK(a.values[0] == 3.5);
}

TEST_CASE("explicit zeros stay stored") {
    CsrMatrix a = parse(
        "%%MatrixMarket matrix coordinate real general\n"
        "2 2 2\n"
        "1 2 0.0\n"
        "2 1 1.0\n");
    CHECK(a.nnz() == 2);
    CHECK(a.values[0] == 0.0);
}

TEST_CASE("comments and blank lines are skipped") {
    CsrMatrix a = parse(
        "%%MatrixMarket matrix coordinate real general\n"
        "% a comment\n"
        "\n"
        "2 2 1\n"
        "% another\n"
        "2 2 5.0\n");
    CHECK(a.nnz() == 1);
    CHECK(a.values[0] == 5.0);
}

TEST_CASE("truncated input reports the line where data ran out") {
    int line = parse_error_line(
        "%%MatrixMarket matrix coordinate real general\n"
        "3 3 5\n"
        "1 1 1.0\n"
        "2 2 1.0\n"
        "3 3 1.0\n"
        "1 2 1.0\n");
    CHECK(line == 7);
}

TEST_CASE("parse errors carry 1-based line numbers") {
    CHECK(parse_error_line("") == 1);
    CHECK(parse_error_line("%%MatrixMarket matrix array real general\n1 1 1\n") == 1);
    CHECK(parse_error_line("not a header\n") == 1);
    CHECK(parse_error_line(
              "%%MatrixMarket matrix coordinate real general\n"
              "2 2\n") == 2);
    // out-of-range entry on line 4
    CHECK(parse_error_line(
              "%%MatrixMarket matrix coordinate real general\n"
              "2 2 2\n"
              "1 1 1.0\n"
              "3 1 1.0\n") == 4);
    // non-numeric value on line 3
    CHECK(parse_error_line(
              "%%MatrixMarket matrix coordinate real general\n"
              "2 2 1\n"
              "1 1 abc\n") == 3);
    // surplus entry on line 5
    CHECK(parse_error_line(
              "%%MatrixMarket matrix coordinate real general\n"
              "2 2 2\n"
              "1 1 1.0\n"
              "2 2 1.0\n"
              "1 2 1.0\n") == 5);
    // non-square symmetric header
    CHECK(parse_error_line(
              "%%MatrixMarket matrix coordinate real symmetric\n"
              "2 3 1\n"
              "1 1 1.0\n") == 2);
}

TEST_CASE("matrix market round trip") {
    CsrMatrix a = random_uniform(17, 23, 0.2, 99);
    std::ostringstream out;
    write_matrix_market(out, a);
    CsrMatrix back = parse(out.str());
    CHECK(back == a);
}

TEST_CASE("lower_triangular extracts the diagonal-inclusive lower part") {
    CsrMatrix dense =
        csr_from_triplets(2, 2, {{0, 0, 2.0}, {0, 1, 1.0}, {1, 0, 3.0}, {1, 1, 4.0}});
    TriangularMatrix l = lower_triangular(dense);
    CHECK(l.csr().row_offsets == std::vector<int>{0, 1, 3});
    CHECK(l.csr().col_indices == std::vector<int>{0, 0, 1});
    CHECK(l.csr().values == std::vector<double>{2.0, 3.0, 4.0});
    CHECK(l.diag_pos(0) == 0);
    CHECK(l.diag_pos(1) == 2);
}

TEST_CASE("lower_triangular rejects bad diagonals and shapes") {
    CsrMatrix zero_diag =
        csr_from_triplets(2, 2, {{0, 0, 0.0}, {1, 0, 1.0}, {1, 1, 2.0}});
    CHECK_THROWS_AS(lower_triangular(zero_diag), std::invalid_argument);
    CsrMatrix missing_diag = csr_from_triplets(2, 2, {{0, 0, 1.0}, {1, 0, 1.0}});
    CHECK_THROWS_AS(lower_triangular(missing_diag), std::invalid_argument);
    CsrMatrix rect = csr_from_triplets(2, 3, {{0, 0, 1.0}, {1, 1, 1.0}});
    CHECK_THROWS_AS(lower_triangular(rect), std::invalid_argument);
}

TEST_CASE("TriangularMatrix::adopt rejects entries above the diagonal") {
    CsrMatrix upper =
        csr_from_triplets(2, 2, {{0, 0, 1.0}, {0, 1, 1.0}, {1, 1, 1.0}});
    CHECK_THROWS_AS(TriangularMatrix::adopt(upper), std::invalid_argument);
    CsrMatrix good = csr_from_triplets(2, 2, {{0, 0, 1.0}, {1, 0, 2.0}, {1, 1, 3.0}});
    CHECK_NOTHROW(TriangularMatrix::adopt(good));
}

TEST_CASE("dense_block is fully dense with row-major values 1..n*n") {
    CsrMatrix a = dense_block(3);
    CHECK(a.row_offsets == std::vector<int>{0, 3, 6, 9});
    CHECK(a.col_indices == std::vector<int>{0, 1, 2, 0, 1, 2, 0, 1, 2});
    CHECK(a.values == std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8, 9});
}

TEST_CASE("banded extents") {
    CHECK(banded(4, 1, true).nnz() == 7);
    CHECK(banded(4, 1).nnz() == 10);
    CsrMatrix tri = banded(4, 1, true);
    CHECK(tri.row_offsets == std::vector<int>{0, 1, 3, 5, 7});
    CHECK(tri.col_indices == std::vector<int>{0, 0, 1, 1, 2, 2, 3});
    CHECK(is_lower_triangular(tri));
}

TEST_CASE("scattered_gather repeats one sorted column set per row") {
    CsrMatrix a = scattered_gather(3, {5, 0, 2, 2});
    CHECK(a.n_rows == 3);
    CHECK(a.n_cols == 6);
    CHECK(a.nnz() == 9);
    for (int i = 0; i < 3; ++i) {
        CHECK(a.col_indices[a.row_offsets[i] + 0] == 0);
        CHECK(a.col_indices[a.row_offsets[i] + 1] == 2);
        CHECK(a.col_indices[a.row_offsets[i] + 2] == 5);
    }
    CHECK(a.values == std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8, 9});
}

TEST_CASE("random_uniform is deterministic per seed with values in [0.5, 1.5)") {
    CsrMatrix a = random_uniform(20, 20, 0.5, 7);
    CsrMatrix b = random_uniform(20, 20, 0.5, 7);
    CHECK(a == b);
    CHECK(a != random_uniform(20, 20, 0.5, 8));
    for (double v : a.values) {
        CHECK(v >= 0.5);
        CHECK(v < 1.5);
    }
    CHECK(random_uniform(10, 10, 0.0, 1).nnz() == 0);
    CHECK(random_uniform(10, 10, 1.0, 1).nnz() == 100);
}

TEST_CASE("generate_pattern builds the described matrix") {
    CHECK(generate_pattern("dense_block(4)") == dense_block(4));
    CHECK(generate_pattern("banded(6,2,lower)") == banded(6, 2, true));
    CHECK(generate_pattern("banded(6,2)") == banded(6, 2));
    CHECK(generate_pattern("random_uniform(8,9,0.5,7)") == random_uniform(8, 9, 0.5, 7));
    CHECK(generate_pattern("random_uniform(8,9,0.5)", 7) == random_uniform(8, 9, 0.5, 7));
    CHECK(generate_pattern("scattered_gather(4, 0:2:5)") == scattered_gather(4, {0, 2, 5}));
}

TEST_CASE("generate_pattern rejects malformed specs") {
    CHECK_THROWS_AS(generate_pattern("dense_block"), std::invalid_argument);
    CHECK_THROWS_AS(generate_pattern("dense_block()"), std::invalid_argument);
    CHECK_THROWS_AS(generate_pattern("dense_block(x)"), std::invalid_argument);
    CHECK_THROWS_AS(generate_pattern("dense_block(3,4)"), std::invalid_argument);
    CHECK_THROWS_AS(generate_pattern("nope(3)"), std::invalid_argument);
    CHECK_THROWS_AS(generate_pattern("banded(6,2,upper)"), std::invalid_argument);
    CHECK_THROWS_AS(generate_pattern("random_uniform(8,8,1.5)"), std::invalid_argument);
}
