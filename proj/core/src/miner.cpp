#include "psc/miner.hpp"

#include <algorithm>
#include <stdexcept>

#include "psc/scheduler.hpp"

namespace psc {

const char* strategy_name(MineStrategy s) {
    switch (s) {
        case MineStrategy::BlasFirst: return "blas_first";
        case MineStrategy::PsciFirst: return "psci_first";
        default: return "pscii_first";
    }
}

std::vector<RowWindow> get_consecutive_iterations(const std::vector<int>& partition_rows,
                                                  int t) {
    if (t < 1) {
        throw std::invalid_argument("get_consecutive_iterations: t must be >= 1");
    }
    std::vector<RowWindow> windows;
    std::size_t i = 0;
    while (i < partition_rows.size()) {
        std::size_t j = i + 1;
        while (j < partition_rows.size() && partition_rows[j] == partition_rows[j - 1] + 1) {
            ++j;
        }
        for (std::size_t k = i; k < j; k += t) {
            std::size_t last = std::min(j, k + t) - 1;
            windows.push_back({partition_rows[k], partition_rows[last] + 1});
        }
        i = j;
    }
    return windows;
}

namespace {

// Coverage bitmap over the iteration points of one window.
class CoverMap {
  public:
    CoverMap(const KernelModel& m, const RowWindow& w)
        : space_(&m.space),
          base_(m.space.offsets[w.row_begin]),
          bits_(m.space.offsets[w.row_end] - base_, 0) {}

    bool covered(int row, int pos) const { return bits_[space_->flat(row, pos) - base_] != 0; }
    void cover(int row, int pos) { bits_[space_->flat(row, pos) - base_] = 1; }

  private:
    const IterationSpace* space_;
    int base_;
    std::vector<unsigned char> bits_;
};

int vec_at(const KernelModel& m, int r, int j) { return m.index_at(m.vec, r, j); }
int mat_at(const KernelModel& m, int r, int j) { return m.index_at(m.mat, r, j); }

// Dense rectangles: gathered columns consecutive within each row, column and
// matrix-position differences constant from row to row.
void mine_blas(const KernelModel& m, const RowWindow& w, CoverMap& cover,
               std::vector<Codelet>& out) {
    for (int r = w.row_begin; r < w.row_end; ++r) {
        int extent = m.space.extents[r];
        int p = 0;
        while (p < extent) {
            if (cover.covered(r, p)) {
                ++p;
                continue;
            }
            int q = p + 1;
            while (q < extent && !cover.covered(r, q) &&
                   vec_at(m, r, q) == vec_at(m, r, q - 1) + 1) {
                ++q;
            }
            int width = q - p;
            if (width < 2) {
                // single columns go to the PSC passes
                p = q;
                continue;
            }
            int rows = 1;
            int mat_delta = 0;
            int vec_delta = 0;
            while (r + rows < w.row_end) {
                int rn = r + rows;
                if (m.space.extents[rn] < p + width) break;
                bool ok = true;
                for (int j = p; j < q && ok; ++j) ok = !cover.covered(rn, j);
                for (int j = p + 1; j < q && ok; ++j) {
                    ok = vec_at(m, rn, j) == vec_at(m, rn, j - 1) + 1;
                }
                if (!ok) break;
                int md = mat_at(m, rn, p) - mat_at(m, rn - 1, p);
                int vd = vec_at(m, rn, p) - vec_at(m, rn - 1, p);
                if (rows == 1) {
                    mat_delta = md;
                    vec_delta = vd;
                } else if (md != mat_delta || vd != vec_delta) {
                    break;
                }
                ++rows;
            }
            Codelet c;
            c.kind = CodeletKind::Blas;
            c.outer_extent = rows;
            c.inner_extent = width;
            c.out = AccessDesc::strided(r, rows > 1 ? 1 : 0, 0);
            c.mat = AccessDesc::strided(mat_at(m, r, p), rows > 1 ? mat_delta : 0, 1);
            c.vec = AccessDesc::strided(vec_at(m, r, p), rows > 1 ? vec_delta : 0, 1);
            out.push_back(std::move(c));
            for (int i = 0; i < rows; ++i) {
                for (int j = p; j < q; ++j) cover.cover(r + i, j);
            }
            p = q;
        }
    }
}

// Shared-gather rectangles: a maximal uncovered run, extended down while the
// rows below expose exactly the same run with identical columns and constant
// matrix difference. Degenerates to per-row 1-D codelets, so it always covers.
void mine_psci(const KernelModel& m, const RowWindow& w, CoverMap& cover,
               std::vector<Codelet>& out) {
    for (int r = w.row_begin; r < w.row_end; ++r) {
        int extent = m.space.extents[r];
        int p = 0;
        while (p < extent) {
            if (cover.covered(r, p)) {
                ++p;
                continue;
            }
            int q = p + 1;
            while (q < extent && !cover.covered(r, q)) ++q;
            int width = q - p;
            int rows = 1;
            int mat_delta = 0;
            while (r + rows < w.row_end) {
                int rn = r + rows;
                if (m.space.extents[rn] < q) break;
                bool ok = (p == 0 || cover.covered(rn, p - 1)) &&
                          (q == m.space.extents[rn] || cover.covered(rn, q));
                for (int j = p; j < q && ok; ++j) ok = !cover.covered(rn, j);
                for (int j = p; j < q && ok; ++j) ok = vec_at(m, rn, j) == vec_at(m, r, j);
                if (!ok) break;
                int md = mat_at(m, rn, p) - mat_at(m, rn - 1, p);
                if (rows == 1) {
                    mat_delta = md;
                } else if (md != mat_delta) {
                    break;
                }
                ++rows;
            }
            Codelet c;
            c.kind = CodeletKind::PscI;
            c.outer_extent = rows;
            c.inner_extent = width;
            c.out = AccessDesc::strided(r, rows > 1 ? 1 : 0, 0);
            c.mat = AccessDesc::strided(mat_at(m, r, p), rows > 1 ? mat_delta : 0, 1);
            std::vector<int> gather(width);
            for (int j = 0; j < width; ++j) gather[j] = vec_at(m, r, p + j);
            c.vec = AccessDesc::inner_table(std::move(gather));
            out.push_back(std::move(c));
            for (int i = 0; i < rows; ++i) {
                for (int j = p; j < q; ++j) cover.cover(r + i, j);
            }
            p = q;
        }
    }
}

// Per-row runs with tabulated outputs and columns; consecutive rows fuse when
// their runs sit at identical positions with constant matrix difference.
void mine_pscii(const KernelModel& m, const RowWindow& w, CoverMap& cover,
                std::vector<Codelet>& out) {
    for (int r = w.row_begin; r < w.row_end; ++r) {
        int extent = m.space.extents[r];
        int p = 0;
        while (p < extent) {
            if (cover.covered(r, p)) {
                ++p;
                continue;
            }
            int q = p + 1;
            while (q < extent && !cover.covered(r, q)) ++q;
            int width = q - p;
            int rows = 1;
            int mat_delta = 0;
            while (r + rows < w.row_end) {
                int rn = r + rows;
                if (m.space.extents[rn] < q) break;
                bool ok = (p == 0 || cover.covered(rn, p - 1)) &&
                          (q == m.space.extents[rn] || cover.covered(rn, q));
                for (int j = p; j < q && ok; ++j) ok = !cover.covered(rn, j);
                if (!ok) break;
                int md = mat_at(m, rn, p) - mat_at(m, rn - 1, p);
                if (rows == 1) {
                    mat_delta = md;
                } else if (md != mat_delta) {
                    break;
                }
                ++rows;
            }
            Codelet c;
            c.kind = CodeletKind::PscII;
            c.outer_extent = rows;
            c.inner_extent = width;
            std::vector<int> outs(rows);
            for (int i = 0; i < rows; ++i) outs[i] = r + i;
            c.out = AccessDesc::outer_table(std::move(outs));
            c.mat = AccessDesc::strided(mat_at(m, r, p), rows > 1 ? mat_delta : 0, 1);
            if (rows == 1) {
                std::vector<int> gather(width);
                for (int j = 0; j < width; ++j) gather[j] = vec_at(m, r, p + j);
                c.vec = AccessDesc::inner_table(std::move(gather));
            } else {
                std::vector<int> gather(static_cast<std::size_t>(rows) * width);
                for (int i = 0; i < rows; ++i) {
                    for (int j = 0; j < width; ++j) {
                        gather[i * width + j] = vec_at(m, r + i, p + j);
                    }
                }
                c.vec = AccessDesc::point_table(std::move(gather));
            }
            out.push_back(std::move(c));
            for (int i = 0; i < rows; ++i) {
                for (int j = p; j < q; ++j) cover.cover(r + i, j);
            }
            p = q;
        }
    }
}

}  // namespace

StrategyResult blas_first(const KernelModel& m, const RowWindow& w) {
    StrategyResult res;
    CoverMap cover(m, w);
    mine_blas(m, w, cover, res.codelets);
    mine_psci(m, w, cover, res.codelets);
    res.cost = plan_cost(res.codelets);
    return res;
}

StrategyResult psci_first(const KernelModel& m, const RowWindow& w) {
    StrategyResult res;
    CoverMap cover(m, w);
    mine_psci(m, w, cover, res.codelets);
    res.cost = plan_cost(res.codelets);
    return res;
}

StrategyResult pscii_first(const KernelModel& m, const RowWindow& w) {
    StrategyResult res;
    CoverMap cover(m, w);
    mine_pscii(m, w, cover, res.codelets);
    res.cost = plan_cost(res.codelets);
    return res;
}

long long CodeletPlan::total_cost() const {
    long long total = 0;
    for (const PartitionPlan& p : partitions) {
        for (const RegionGroup& g : p.groups) total += g.cost;
    }
    return total;
}

long long CodeletPlan::total_ops() const {
    long long total = 0;
    for (const PartitionPlan& p : partitions) {
        for (const RegionGroup& g : p.groups) {
            for (const Codelet& c : g.codelets) total += c.ops();
        }
    }
    return total;
}

CodeletPlan inspect(KernelKind kernel, const CsrMatrix& a, int t, int target_groups) {
    if (t < 1) throw std::invalid_argument("inspect: t must be >= 1");
    if (target_groups < 1) throw std::invalid_argument("inspect: target_groups must be >= 1");

    KernelModel model = compute_access_functions(kernel, a);
    DependencyGraph graph = find_dependencies(kernel, a);
    Schedule schedule = partition_iteration_space(graph, a, target_groups);

    CodeletPlan plan;
    plan.kernel = kernel;
    plan.n_rows = a.n_rows;
    plan.n_cols = a.n_cols;
    plan.nnz = a.nnz();
    plan.window = t;
    plan.target_groups = target_groups;
    plan.partitions.reserve(schedule.partitions.size());

    for (const std::vector<int>& rows : schedule.partitions) {
        PartitionPlan part;
        for (const RowWindow& w : get_consecutive_iterations(rows, t)) {
            StrategyResult candidates[3] = {blas_first(model, w), psci_first(model, w),
                                            pscii_first(model, w)};
            int best = 0;
            for (int s = 1; s < 3; ++s) {
                if (candidates[s].cost < candidates[best].cost) best = s;
            }
            RegionGroup group;
            group.window = w;
            group.strategy = static_cast<MineStrategy>(best);
            group.cost = candidates[best].cost;
            group.codelets = std::move(candidates[best].codelets);
            if (kernel == KernelKind::Sptrsv) {
                for (int r = w.row_begin; r < w.row_end; ++r) {
                    group.finalize.push_back({r, model.diag_positions[r], r});
                }
            }
            part.groups.push_back(std::move(group));
        }
        plan.partitions.push_back(std::move(part));
    }
    validate_plan(plan, model);
    return plan;
}

void validate_plan(const CodeletPlan& plan, const KernelModel& m) {
    if (plan.n_rows != m.space.n_rows) {
        throw std::logic_error("plan: row count does not match the kernel model");
    }
    int points = m.space.points();
    std::vector<int> flat_of_mat(static_cast<std::size_t>(plan.nnz), -1);
    for (int f = 0; f < points; ++f) flat_of_mat[m.mat.indices[f]] = f;

    std::vector<unsigned char> seen(points, 0);
    long long covered = 0;
    std::vector<int> finalized;

    for (const PartitionPlan& part : plan.partitions) {
        for (const RegionGroup& g : part.groups) {
            for (const Codelet& c : g.codelets) {
                if (c.outer_extent < 1 || c.inner_extent < 1) {
                    throw std::logic_error("plan: empty codelet");
                }
                if (kind_from_descriptors(c.out, c.mat, c.vec) != c.kind) {
                    throw std::logic_error("plan: codelet kind does not match descriptors");
                }
                for (int i = 0; i < c.outer_extent; ++i) {
                    for (int j = 0; j < c.inner_extent; ++j) {
                        int k = c.mat.at(i, j, c.inner_extent);
                        if (k < 0 || k >= plan.nnz || flat_of_mat[k] < 0) {
                            throw std::logic_error("plan: matrix index outside operation set");
                        }
                        int f = flat_of_mat[k];
                        if (seen[f]) throw std::logic_error("plan: operation covered twice");
                        seen[f] = 1;
                        ++covered;
                        if (c.out.at(i, j, c.inner_extent) != m.out.indices[f]) {
                            throw std::logic_error("plan: wrong output index");
                        }
                        if (c.vec.at(i, j, c.inner_extent) != m.vec.indices[f]) {
                            throw std::logic_error("plan: wrong gather index");
                        }
                        int row = m.out.indices[f];
                        if (row < g.window.row_begin || row >= g.window.row_end) {
                            throw std::logic_error("plan: operation outside its window");
                        }
                    }
                }
            }
            for (const FinalizeRecord& fr : g.finalize) {
                if (plan.kernel != KernelKind::Sptrsv) {
                    throw std::logic_error("plan: finalize record in a non-sptrsv plan");
                }
                if (fr.row < 0 || fr.row >= plan.n_rows ||
                    fr.diag_pos != m.diag_positions[fr.row] || fr.rhs_index != fr.row) {
                    throw std::logic_error("plan: bad finalize record");
                }
                finalized.push_back(fr.row);
            }
        }
    }
    if (covered != points) {
        throw std::logic_error("plan: uncovered operations");
    }
    if (plan.kernel == KernelKind::Sptrsv) {
        std::sort(finalized.begin(), finalized.end());
        for (int r = 0; r < plan.n_rows; ++r) {
            if (r >= static_cast<int>(finalized.size()) || finalized[r] != r) {
                throw std::logic_error("plan: finalize records do not cover every row once");
            }
        }
        if (static_cast<int>(finalized.size()) != plan.n_rows) {
            throw std::logic_error("plan: surplus finalize records");
        }
    }
}

}  // namespace psc
