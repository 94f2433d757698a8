#include "psc/executor.hpp"

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string_view>
#include <thread>

namespace psc {

namespace {

// Four-lane dot products: the naive accumulation is latency-bound on the
// serial FP add chain, which the compiler may not reassociate on its own.
// The lane order is fixed, so results stay deterministic run to run. Solve
// contexts (ctx.rhs set) keep strictly sequential sums instead: their row
// magnitudes can compound past 2^53, where reassociation would break the
// bitwise match with scalar forward substitution.
inline double dot_unit(const double* a, const double* b, int n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    int j = 0;
    for (; j + 4 <= n; j += 4) {
        s0 += a[j] * b[j];
        s1 += a[j + 1] * b[j + 1];
        s2 += a[j + 2] * b[j + 2];
        s3 += a[j + 3] * b[j + 3];
    }
    double sum = (s0 + s1) + (s2 + s3);
    for (; j < n; ++j) sum += a[j] * b[j];
    return sum;
}

inline double dot_gather(const double* a, const double* x, const int* cols, int n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    int j = 0;
    for (; j + 4 <= n; j += 4) {
        s0 += a[j] * x[cols[j]];
        s1 += a[j + 1] * x[cols[j + 1]];
        s2 += a[j + 2] * x[cols[j + 2]];
        s3 += a[j + 3] * x[cols[j + 3]];
    }
    double sum = (s0 + s1) + (s2 + s3);
    for (; j < n; ++j) sum += a[j] * x[cols[j]];
    return sum;
}

}  // namespace

void exec_blas_codelet(const Codelet& c, const ExecutionContext& ctx) {
    if (c.out.is_table() || c.mat.is_table() || c.vec.is_table()) {
        throw std::invalid_argument("exec_blas_codelet: descriptors must be strided");
    }
    const double* ax = ctx.matrix_values;
    const double* x = ctx.gather;
    const int n = c.inner_extent;
    const int msi = c.mat.lin.stride_inner;
    const int vsi = c.vec.lin.stride_inner;
    for (int i = 0; i < c.outer_extent; ++i) {
        const double* arow = ax + c.mat.lin.base + 1L * i * c.mat.lin.stride_outer;
        const double* xrow = x + c.vec.lin.base + 1L * i * c.vec.lin.stride_outer;
        double sum = 0.0;
        if (msi == 1 && vsi == 1 && ctx.rhs == nullptr) {
            sum = dot_unit(arow, xrow, n);
        } else {
            for (int j = 0; j < n; ++j) sum += arow[j * msi] * xrow[j * vsi];
        }
        ctx.accum[c.out.lin.at(i, 0)] += sum;
    }
}

void exec_psci_codelet(const Codelet& c, const ExecutionContext& ctx) {
    if (c.out.is_table() || c.mat.is_table() || !c.vec.is_table()) {
        throw std::invalid_argument("exec_psci_codelet: expects one gather table");
    }
    const double* ax = ctx.matrix_values;
    const double* x = ctx.gather;
    const int* cols = c.vec.table.data();
    const int n = c.inner_extent;
    const int msi = c.mat.lin.stride_inner;
    for (int i = 0; i < c.outer_extent; ++i) {
        const double* arow = ax + c.mat.lin.base + 1L * i * c.mat.lin.stride_outer;
        double sum = 0.0;
        if (msi == 1 && ctx.rhs == nullptr) {
            sum = dot_gather(arow, x, cols, n);
        } else {
            for (int j = 0; j < n; ++j) sum += arow[j * msi] * x[cols[j]];
        }
        ctx.accum[c.out.lin.at(i, 0)] += sum;
    }
}

void exec_pscii_codelet(const Codelet& c, const ExecutionContext& ctx) {
    if (!c.out.is_table() || c.mat.is_table() || !c.vec.is_table()) {
        throw std::invalid_argument("exec_pscii_codelet: expects output and gather tables");
    }
    const double* ax = ctx.matrix_values;
    const double* x = ctx.gather;
    const int n = c.inner_extent;
    const int msi = c.mat.lin.stride_inner;
    bool per_point = c.vec.form == AccessDesc::Form::PointTable;
    for (int i = 0; i < c.outer_extent; ++i) {
        const double* arow = ax + c.mat.lin.base + 1L * i * c.mat.lin.stride_outer;
        const int* cols = per_point ? c.vec.table.data() + 1L * i * n : c.vec.table.data();
        double sum = 0.0;
        if (msi == 1 && ctx.rhs == nullptr) {
            sum = dot_gather(arow, x, cols, n);
        } else {
            for (int j = 0; j < n; ++j) sum += arow[j * msi] * x[cols[j]];
        }
        ctx.accum[c.out.table[i]] += sum;
    }
}

namespace {

void exec_codelet(const Codelet& c, const ExecutionContext& ctx) {
    switch (c.kind) {
        case CodeletKind::Blas: exec_blas_codelet(c, ctx); break;
        case CodeletKind::PscI: exec_psci_codelet(c, ctx); break;
        default: exec_pscii_codelet(c, ctx); break;
    }
}

void exec_group(const RegionGroup& g, const ExecutionContext& ctx) {
    for (const Codelet& c : g.codelets) exec_codelet(c, ctx);
    for (const FinalizeRecord& f : g.finalize) {
        ctx.solution[f.row] =
            (ctx.rhs[f.rhs_index] - ctx.accum[f.row]) / ctx.matrix_values[f.diag_pos];
    }
}

}  // namespace

// Persistent pool: N-1 spawned threads plus the caller all pull group indices
// from a shared counter; parallel_for returns once every index completed.
class Executor::Pool {
  public:
    explicit Pool(int extra_threads) {
        threads_.reserve(extra_threads);
        for (int i = 0; i < extra_threads; ++i) {
            threads_.emplace_back([this] { worker_loop(); });
        }
    }

    ~Pool() {
        {
            std::lock_guard<std::mutex> lk(mu_);
            stop_ = true;
        }
        cv_start_.notify_all();
        for (std::thread& t : threads_) t.join();
    }

    void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
        if (threads_.empty() || count <= 1) {
            for (std::size_t i = 0; i < count; ++i) fn(i);
            return;
        }
        {
            std::lock_guard<std::mutex> lk(mu_);
            job_ = &fn;
            count_ = count;
            next_.store(0, std::memory_order_relaxed);
            done_.store(0, std::memory_order_relaxed);
            ++generation_;
        }
        // Wake one worker; each woken worker wakes the next only while shares
        // remain (chained wake-up). Fast callers drain small dispatches before
        // the chain spreads, so idle workers are not churned for nothing.
        cv_start_.notify_one();
        work(fn, count, false);
        // Wait for joined workers to leave the claim loop, not just for the
        // last share to finish: a straggler's final fetch_add must land on
        // this dispatch's counter, never on a reset one.
        std::unique_lock<std::mutex> lk(mu_);
        cv_done_.wait(lk, [&] {
            return done_.load(std::memory_order_acquire) == count &&
                   active_.load(std::memory_order_acquire) == 0;
        });
        job_ = nullptr;
    }

  private:
    void work(const std::function<void(std::size_t)>& fn, std::size_t count, bool chain) {
        while (true) {
            std::size_t i = next_.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) break;
            if (chain && next_.load(std::memory_order_relaxed) < count) cv_start_.notify_one();
            fn(i);
            if (done_.fetch_add(1, std::memory_order_acq_rel) + 1 == count) {
                std::lock_guard<std::mutex> lk(mu_);
                cv_done_.notify_all();
            }
        }
    }

    void worker_loop() {
        std::uint64_t seen = 0;
        while (true) {
            const std::function<void(std::size_t)>* job;
            std::size_t count;
            {
                std::unique_lock<std::mutex> lk(mu_);
                cv_start_.wait(lk, [&] { return stop_ || generation_ != seen; });
                if (stop_) return;
                seen = generation_;
                job = job_;
                count = count_;
                active_.fetch_add(1, std::memory_order_relaxed);
            }
            work(*job, count, true);
            if (active_.fetch_sub(1, std::memory_order_acq_rel) == 1) {
                std::lock_guard<std::mutex> lk(mu_);
                cv_done_.notify_all();
            }
        }
    }

    std::vector<std::thread> threads_;
    std::mutex mu_;
    std::condition_variable cv_start_;
    std::condition_variable cv_done_;
    const std::function<void(std::size_t)>* job_ = nullptr;
    std::size_t count_ = 0;
    std::atomic<std::size_t> next_{0};
    std::atomic<std::size_t> done_{0};
    std::atomic<int> active_{0};
    std::uint64_t generation_ = 0;
    bool stop_ = false;
};

namespace {

// Oversubscribing the machine only adds context switches, so the pool spawns
// at most hardware_concurrency threads overall unless PSC_EXACT_WORKERS asks
// for the literal count. Results never depend on the spawned count.
int spawned_threads(int workers) {
    if (const char* env = std::getenv("PSC_EXACT_WORKERS")) {
        if (env[0] != '\0' && std::string_view(env) != "0") return workers - 1;
    }
    unsigned hw = std::thread::hardware_concurrency();
    if (hw != 0 && int(hw) < workers) workers = int(hw);
    return workers - 1;
}

}  // namespace

Executor::Executor(int workers) : workers_(workers) {
    if (workers < 1) {
        throw std::invalid_argument("Executor: worker count must be >= 1");
    }
    pool_ = std::make_unique<Pool>(spawned_threads(workers));
}

Executor::~Executor() = default;

void Executor::run(const CodeletPlan& plan, const ExecutionContext& ctx) {
    for (const PartitionPlan& part : plan.partitions) {
        const std::vector<RegionGroup>& groups = part.groups;
        pool_->parallel_for(groups.size(),
                            [&](std::size_t gi) { exec_group(groups[gi], ctx); });
    }
}

void execute_plan(const CodeletPlan& plan, const ExecutionContext& ctx, int workers) {
    Executor exec(workers);
    exec.run(plan, ctx);
}

void run_spmv(const CodeletPlan& plan, const CsrMatrix& a, std::span<const double> x,
              std::span<double> y, Executor& exec) {
    if (plan.kernel != KernelKind::Spmv) {
        throw std::invalid_argument("run_spmv: plan was built for another kernel");
    }
    if (static_cast<int>(x.size()) != a.n_cols || static_cast<int>(y.size()) != a.n_rows) {
        throw std::invalid_argument("run_spmv: vector size mismatch");
    }
    std::fill(y.begin(), y.end(), 0.0);
    ExecutionContext ctx;
    ctx.matrix_values = a.values.data();
    ctx.gather = x.data();
    ctx.accum = y.data();
    exec.run(plan, ctx);
}

void run_sptrsv(const CodeletPlan& plan, const TriangularMatrix& l, std::span<const double> b,
                std::span<double> x, std::span<double> acc, Executor& exec) {
    if (plan.kernel != KernelKind::Sptrsv) {
        throw std::invalid_argument("run_sptrsv: plan was built for another kernel");
    }
    int n = l.n();
    if (static_cast<int>(b.size()) != n || static_cast<int>(x.size()) != n ||
        static_cast<int>(acc.size()) != n) {
        throw std::invalid_argument("run_sptrsv: vector size mismatch");
    }
    std::fill(acc.begin(), acc.end(), 0.0);
    ExecutionContext ctx;
    ctx.matrix_values = l.csr().values.data();
    ctx.gather = x.data();
    ctx.accum = acc.data();
    ctx.rhs = b.data();
    ctx.solution = x.data();
    exec.run(plan, ctx);
}

std::vector<double> spmv_csr_baseline(const CsrMatrix& a, std::span<const double> x) {
    if (static_cast<int>(x.size()) != a.n_cols) {
        throw std::invalid_argument("spmv_csr_baseline: vector size mismatch");
    }
    std::vector<double> y(a.n_rows);
    for (int i = 0; i < a.n_rows; ++i) {
        double sum = 0.0;
        for (int k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k) {
            sum += a.values[k] * x[a.col_indices[k]];
        }
        y[i] = sum;
    }
    return y;
}

std::vector<double> sptrsv_csr_baseline(const TriangularMatrix& l, std::span<const double> b) {
    const CsrMatrix& a = l.csr();
    if (static_cast<int>(b.size()) != a.n_rows) {
        throw std::invalid_argument("sptrsv_csr_baseline: vector size mismatch");
    }
    std::vector<double> x(a.n_rows);
    for (int i = 0; i < a.n_rows; ++i) {
        double sum = 0.0;
        int diag = l.diag_pos(i);
        for (int k = a.row_offsets[i]; k < diag; ++k) {
            sum += a.values[k] * x[a.col_indices[k]];
        }
        x[i] = (b[i] - sum) / a.values[diag];
    }
    return x;
}

}  // namespace psc
