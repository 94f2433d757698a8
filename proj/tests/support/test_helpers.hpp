#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "psc/csr_matrix.hpp"
#include "psc/executor.hpp"
#include "psc/miner.hpp"

namespace psc::test {

// Lower triangle of a square matrix with the diagonal forced to 1.0, so
// triangular solves stay exact on integer inputs.
inline CsrMatrix unit_lower(const CsrMatrix& a) {
    std::vector<Triplet> t;
    for (int i = 0; i < a.n_rows; ++i) {
        for (int k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k) {
            if (a.col_indices[k] < i) t.push_back({i, a.col_indices[k], a.values[k]});
        }
        t.push_back({i, i, 1.0});
    }
    return csr_from_triplets(a.n_rows, a.n_rows, std::move(t));
}

// Unit-diagonal lower triangular pattern with up to max_extra random
// subdiagonal entries per row, small integer values.
inline CsrMatrix random_unit_lower(int n, int max_extra, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Triplet> t;
    for (int i = 0; i < n; ++i) {
        if (i > 0) {
            int extra = static_cast<int>(rng() % (max_extra + 1));
            for (int e = 0; e < extra; ++e) {
                int j = static_cast<int>(rng() % i);
                t.push_back({i, j, static_cast<double>(1 + rng() % 7)});
            }
        }
        t.push_back({i, i, 1.0});
    }
    return csr_from_triplets(n, n, std::move(t));
}

inline std::vector<double> int_vector(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> v(n);
    for (double& x : v) x = static_cast<double>(1 + rng() % 9);
    return v;
}

inline void int_values(CsrMatrix& a, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (double& v : a.values) v = static_cast<double>(1 + rng() % 9);
}

inline double max_rel_err(std::span<const double> got, std::span<const double> want) {
    double worst = 0.0;
    for (std::size_t i = 0; i < want.size(); ++i) {
        double d = std::abs(got[i] - want[i]);
        if (d == 0.0) continue;
        double rel = d / std::max(std::abs(want[i]), 1e-300);
        if (rel > worst) worst = rel;
    }
    return worst;
}

inline std::vector<double> plan_spmv(const CsrMatrix& a, const std::vector<double>& x, int t,
                                     int groups, int workers) {
    CodeletPlan plan = inspect(KernelKind::Spmv, a, t, groups);
    Executor exec(workers);
    std::vector<double> y(a.n_rows);
    run_spmv(plan, a, x, y, exec);
    return y;
}

inline std::vector<double> plan_sptrsv(const TriangularMatrix& l, const std::vector<double>& b,
                                       int t, int groups, int workers) {
    CodeletPlan plan = inspect(KernelKind::Sptrsv, l.csr(), t, groups);
    Executor exec(workers);
    std::vector<double> x(l.n());
    std::vector<double> acc(l.n());
    run_sptrsv(plan, l, b, x, acc, exec);
    return x;
}

}  // namespace psc::test
