#pragma once

#include <vector>

#include "psc/codelet.hpp"
#include "psc/csr_matrix.hpp"
#include "psc/kernel_model.hpp"

namespace psc {

// Half-open range of consecutive row ids.
struct RowWindow {
    int row_begin = 0;
    int row_end = 0;

    int rows() const { return row_end - row_begin; }
    bool operator==(const RowWindow&) const = default;
};

// Splits a partition into search windows of at most t consecutive rows. Rows
// must be sorted; a gap in the ids also starts a new window, so level-set
// partitions (not necessarily contiguous) work too.
std::vector<RowWindow> get_consecutive_iterations(const std::vector<int>& partition_rows,
                                                  int t);

struct StrategyResult {
    std::vector<Codelet> codelets;
    long long cost = 0;
};

// The three mining strategies. Each covers every operation of the window
// exactly once; they differ in which codelet form they try to grow first.
//
// blas_first scans rows top-down for runs of >= 2 consecutive gathered
// columns, widens right then extends down while all three access functions
// keep constant differences, and hands the remainder to psci_first's search.
StrategyResult blas_first(const KernelModel& m, const RowWindow& w);

// psci_first grows rectangles sharing one gather table: a maximal uncovered
// run of one row, extended down while following rows expose the same run with
// identical columns and constant matrix row-to-row difference. Single rows
// degenerate to 1-D PSC I codelets, so coverage never falls through.
StrategyResult psci_first(const KernelModel& m, const RowWindow& w);

// pscii_first emits one codelet per maximal per-row run, fusing consecutive
// rows whose runs sit at identical positions with constant matrix row-to-row
// difference. Output indices and gathered columns become offset tables.
StrategyResult pscii_first(const KernelModel& m, const RowWindow& w);

enum class MineStrategy { BlasFirst, PsciFirst, PsciiFirst };

const char* strategy_name(MineStrategy s);

// Per-row epilogue of a triangular solve: x[row] = (rhs[rhs_index] -
// acc[row]) / Ax[diag_pos], run after the row's codelets.
struct FinalizeRecord {
    int row = 0;
    int diag_pos = 0;
    int rhs_index = 0;

    bool operator==(const FinalizeRecord&) const = default;
};

// Codelets of one window plus the finalize records of its rows. Groups of a
// partition are mutually independent; partitions are ordered.
struct RegionGroup {
    RowWindow window;
    MineStrategy strategy = MineStrategy::PsciiFirst;
    long long cost = 0;
    std::vector<Codelet> codelets;
    std::vector<FinalizeRecord> finalize;
};

struct PartitionPlan {
    std::vector<RegionGroup> groups;
};

struct CodeletPlan {
    KernelKind kernel = KernelKind::Spmv;
    int n_rows = 0;
    int n_cols = 0;
    long long nnz = 0;
    int window = 0;         // t used for mining
    int target_groups = 0;  // requested partition count for edgeless schedules
    std::vector<PartitionPlan> partitions;

    long long total_cost() const;
    long long total_ops() const;
};

// Runs the full inspector: access functions, dependencies, schedule, then per
// window the three strategies keeping the cheapest (ties: blas_first, then
// psci_first, then pscii_first). The returned plan is validated: every
// operation covered exactly once, all indices in range.
CodeletPlan inspect(KernelKind kernel, const CsrMatrix& a, int t, int target_groups);

// Exhaustive coverage and range check; throws std::logic_error on violation.
void validate_plan(const CodeletPlan& plan, const KernelModel& m);

}  // namespace psc
