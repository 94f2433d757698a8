#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psc/csr_matrix.hpp"

namespace psc {

// Synthetic test matrices. Values are deterministic: the structured
// generators number stored entries 1, 2, 3, ... in row-major order,
// random_uniform draws values from [0.5, 1.5) so accumulations never cancel.

// n x n, fully dense.
CsrMatrix dense_block(int n);

// n x n band: columns i-bandwidth .. i+bandwidth, or .. i when lower_only.
CsrMatrix banded(int n, int bandwidth, bool lower_only = false);

// Every row stores exactly the given column set (sorted, deduplicated).
// Column count of the matrix is max(cols) + 1.
CsrMatrix scattered_gather(int rows, std::vector<int> cols);

// Independent inclusion of each cell with probability `density`; both the
// inclusion draw and the value draw come from one mt19937_64 stream, so a
// seed fully determines the matrix on any platform.
CsrMatrix random_uniform(int rows, int cols, double density, std::uint64_t seed);

// Builds a matrix from a textual description such as
//   dense_block(8)
//   banded(64,3) | banded(64,3,lower)
//   random_uniform(128,96,0.05) | random_uniform(128,96,0.05,7)
//   scattered_gather(16,0:2:5)
// random_uniform falls back to `default_seed` when no seed is given.
CsrMatrix generate_pattern(const std::string& spec, std::uint64_t default_seed = 42);

}  // namespace psc
