#pragma once

#include <memory>
#include <span>
#include <vector>

#include "psc/csr_matrix.hpp"
#include "psc/miner.hpp"

namespace psc {

// Raw views of the arrays a plan operates on. `accum` receives the codelet
// accumulations: the result vector for Spmv, the off-diagonal dot products
// for Sptrsv. The Sptrsv finalize step additionally reads `rhs` and writes
// `solution`; gather and solution then alias the same array on purpose, since
// codelets of later partitions read solution entries finalized earlier.
struct ExecutionContext {
    const double* matrix_values = nullptr;
    const double* gather = nullptr;
    double* accum = nullptr;
    const double* rhs = nullptr;   // Sptrsv only
    double* solution = nullptr;    // Sptrsv only
};

void exec_blas_codelet(const Codelet& c, const ExecutionContext& ctx);
void exec_psci_codelet(const Codelet& c, const ExecutionContext& ctx);
void exec_pscii_codelet(const Codelet& c, const ExecutionContext& ctx);

// Runs plans over a persistent worker pool. Partitions run in order with a
// barrier between them; the region groups of one partition are distributed
// over the workers; within a group, codelets then finalize records run
// sequentially. With 1 worker everything runs on the calling thread. Results
// are bitwise independent of the worker count because groups never share an
// output row. The pool never spawns more threads than the hardware offers;
// set PSC_EXACT_WORKERS=1 to force the requested count.
class Executor {
  public:
    explicit Executor(int workers);
    ~Executor();

    Executor(const Executor&) = delete;
    Executor& operator=(const Executor&) = delete;

    int workers() const { return workers_; }
    void run(const CodeletPlan& plan, const ExecutionContext& ctx);

  private:
    class Pool;
    int workers_;
    std::unique_ptr<Pool> pool_;
};

// One-shot convenience around a temporary Executor.
void execute_plan(const CodeletPlan& plan, const ExecutionContext& ctx, int workers);

// y = A x through a plan; y is zero-filled first.
void run_spmv(const CodeletPlan& plan, const CsrMatrix& a, std::span<const double> x,
              std::span<double> y, Executor& exec);

// Solves L x = b through a plan; `acc` is scratch of size n, zero-filled here.
void run_sptrsv(const CodeletPlan& plan, const TriangularMatrix& l, std::span<const double> b,
                std::span<double> x, std::span<double> acc, Executor& exec);

std::vector<double> spmv_csr_baseline(const CsrMatrix& a, std::span<const double> x);
std::vector<double> sptrsv_csr_baseline(const TriangularMatrix& l, std::span<const double> b);

}  // namespace psc
