#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "psc/csr_matrix.hpp"
#include "psc/kernel_model.hpp"
#include "psc/miner.hpp"

namespace psc {

// inspector / (baseline - executor): how many executor runs pay off the
// inspection. Sets amortizable=false and returns +inf when the executor is
// not faster than the baseline.
double compute_ner(double inspector_seconds, double baseline_seconds,
                   double executor_seconds, bool& amortizable);

// 2*nnz for Spmv; for Sptrsv one multiply-add per off-diagonal entry plus one
// divide per row, 2*nnz - n.
long long theoretical_flops(KernelKind kernel, int n_rows, long long nnz);

// Fraction of plan operations per codelet form. All zero for an empty plan.
struct OperationBreakdown {
    double blas = 0.0;
    double psc1 = 0.0;
    double psc2 = 0.0;
};

OperationBreakdown operation_breakdown(const CodeletPlan& plan);

struct BenchConfig {
    std::string matrix_name;
    KernelKind kernel = KernelKind::Spmv;
    int t = 3;
    int groups = 0;  // 0: use the worker count
    int workers = 1;
    int repeats = 5;
    double verify_tol = 1e-12;
    bool baseline_only = false;
    std::uint64_t seed = 42;  // input vector values
};

struct BenchReport {
    std::string matrix;
    std::string kernel;
    int n_rows = 0;
    int n_cols = 0;
    long long nnz = 0;
    int t = 0;
    int groups = 0;
    int workers = 0;
    int repeats = 0;
    bool baseline_only = false;
    double inspector_seconds = 0.0;
    double executor_seconds = 0.0;
    double baseline_seconds = 0.0;
    double gflops = 0.0;
    double ner = 0.0;
    bool amortizable = false;
    OperationBreakdown breakdown;
    bool verified = false;
    double max_rel_error = 0.0;
};

// Inspects once, then times baseline and executor (one warm-up run each,
// median of `repeats` timed runs on a monotonic clock) and verifies the last
// executor output against the baseline. For Sptrsv the lower triangle of
// `a` (diagonal included) is what gets solved, and the reported dimensions
// refer to it. With baseline_only only the baseline is timed and verification
// is vacuously true.
BenchReport run_bench(const BenchConfig& cfg, const CsrMatrix& a);

enum class ReportFormat { Csv, Json, Text };

// Parses "csv" | "json" | "text"; throws std::invalid_argument otherwise.
ReportFormat parse_report_format(const std::string& s);

// CSV: documented header + one row per report; numbers are rendered
// round-trip-shortest; ner is "not_amortizable" when not amortizable; fields
// that a baseline-only run never produced stay empty. JSON: array of objects
// with fixed key order (missing measurements are null). Text: one block per
// report.
std::string emit_report(const BenchReport& report, ReportFormat format);
std::string emit_reports(std::span<const BenchReport> reports, ReportFormat format);

// One value per line, round-trip precision.
void write_vector_text(std::ostream& os, std::span<const double> v);

// Deterministic input vector with entries in [0.5, 1.5).
std::vector<double> seeded_vector(int n, std::uint64_t seed);

}  // namespace psc
