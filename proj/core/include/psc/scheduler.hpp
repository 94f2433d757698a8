#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "psc/csr_matrix.hpp"
#include "psc/kernel_model.hpp"

namespace psc {

// Row-level dependencies of one kernel over one sparsity pattern. An edge
// (src, dst) means row src must complete before row dst starts.
struct DependencyGraph {
    int n_vertices = 0;
    std::vector<std::pair<int, int>> edges;
};

// Spmv rows are independent: no edges. Sptrsv: every stored off-diagonal
// entry (i, j) makes row i read x[j], so it contributes edge (j, i).
DependencyGraph find_dependencies(KernelKind kernel, const CsrMatrix& a);

// Ordered row partitions. Executing partitions in order with a barrier
// between them respects every edge; rows within a partition are mutually
// independent.
struct Schedule {
    std::vector<std::vector<int>> partitions;
};

// With edges: partitions are the dependency level sets (level of a row is the
// longest edge path reaching it), rows ascending within each level. Without
// edges: up to target_groups contiguous row ranges balanced by stored-entry
// count. Throws std::invalid_argument on cyclic graphs or target_groups < 1.
Schedule partition_iteration_space(const DependencyGraph& g, const CsrMatrix& a,
                                   int target_groups);

// One line per partition: "partition <k> : <row ids>".
void dump_schedule(std::ostream& os, const Schedule& s);

}  // namespace psc
