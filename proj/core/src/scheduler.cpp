#include "psc/scheduler.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace psc {

DependencyGraph find_dependencies(KernelKind kernel, const CsrMatrix& a) {
    validate_csr(a);
    DependencyGraph g;
    g.n_vertices = a.n_rows;
    if (kernel == KernelKind::Spmv) {
        return g;
    }
    for (int i = 0; i < a.n_rows; ++i) {
        for (int k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k) {
            int j = a.col_indices[k];
            if (j != i) g.edges.emplace_back(j, i);
        }
    }
    return g;
}

namespace {

Schedule level_sets(const DependencyGraph& g) {
    int n = g.n_vertices;
    std::vector<std::vector<int>> succ(n);
    std::vector<int> indegree(n, 0);
    for (auto [src, dst] : g.edges) {
        if (src < 0 || src >= n || dst < 0 || dst >= n) {
            throw std::invalid_argument("partition_iteration_space: edge endpoint out of range");
        }
        succ[src].push_back(dst);
        ++indegree[dst];
    }

    std::vector<int> level(n, 0);
    std::vector<int> ready;
    for (int v = 0; v < n; ++v) {
        if (indegree[v] == 0) ready.push_back(v);
    }
    int processed = 0;
    int max_level = -1;
    for (std::size_t head = 0; head < ready.size(); ++head) {
        int v = ready[head];
        ++processed;
        max_level = std::max(max_level, level[v]);
        for (int w : succ[v]) {
            level[w] = std::max(level[w], level[v] + 1);
            if (--indegree[w] == 0) ready.push_back(w);
        }
    }
    if (processed != n) {
        throw std::invalid_argument("partition_iteration_space: dependency graph has a cycle");
    }

    Schedule s;
    s.partitions.resize(max_level + 1);
    for (int v = 0; v < n; ++v) {
        s.partitions[level[v]].push_back(v);
    }
    return s;
}

Schedule balanced_ranges(const CsrMatrix& a, int target_groups) {
    Schedule s;
    int n = a.n_rows;
    if (n == 0) return s;
    int groups = std::min(target_groups, n);
    long long total = a.nnz();
    long long acc = 0;
    int row = 0;
    for (int g = 0; g < groups; ++g) {
        long long threshold = total * (g + 1) / groups;
        std::vector<int> part;
        // Leave at least one row for each remaining group; the last group
        // absorbs everything left (zero-weight tail rows included).
        int last_allowed = n - (groups - 1 - g);
        bool last = g == groups - 1;
        while (row < last_allowed && (last || part.empty() || acc < threshold)) {
            acc += a.row_extent(row);
            part.push_back(row++);
        }
        s.partitions.push_back(std::move(part));
    }
    return s;
}

}  // namespace

Schedule partition_iteration_space(const DependencyGraph& g, const CsrMatrix& a,
                                   int target_groups) {
    if (target_groups < 1) {
        throw std::invalid_argument("partition_iteration_space: target_groups must be >= 1");
    }
    if (g.n_vertices != a.n_rows) {
        throw std::invalid_argument("partition_iteration_space: graph/matrix size mismatch");
    }
    if (g.edges.empty()) {
        return balanced_ranges(a, target_groups);
    }
    return level_sets(g);
}

void dump_schedule(std::ostream& os, const Schedule& s) {
    for (std::size_t k = 0; k < s.partitions.size(); ++k) {
        os << "partition " << k << " :";
        for (int row : s.partitions[k]) os << " " << row;
        os << "\n";
    }
}

}  // namespace psc
