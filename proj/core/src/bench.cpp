#include "psc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <ostream>
#include <random>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "psc/executor.hpp"

namespace psc {

double compute_ner(double inspector_seconds, double baseline_seconds,
                   double executor_seconds, bool& amortizable) {
    amortizable = executor_seconds < baseline_seconds;
    if (!amortizable) {
        return std::numeric_limits<double>::infinity();
    }
    return inspector_seconds / (baseline_seconds - executor_seconds);
}

long long theoretical_flops(KernelKind kernel, int n_rows, long long nnz) {
    if (kernel == KernelKind::Spmv) {
        return 2 * nnz;
    }
    return 2 * nnz - n_rows;
}

OperationBreakdown operation_breakdown(const CodeletPlan& plan) {
    long long ops[3] = {0, 0, 0};
    for (const PartitionPlan& part : plan.partitions) {
        for (const RegionGroup& g : part.groups) {
            for (const Codelet& c : g.codelets) ops[static_cast<int>(c.kind)] += c.ops();
        }
    }
    long long total = ops[0] + ops[1] + ops[2];
    if (total == 0) return {};
    OperationBreakdown b;
    b.blas = static_cast<double>(ops[0]) / static_cast<double>(total);
    b.psc1 = static_cast<double>(ops[1]) / static_cast<double>(total);
    b.psc2 = static_cast<double>(ops[2]) / static_cast<double>(total);
    return b;
}

std::vector<double> seeded_vector(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> v(n);
    for (double& x : v) {
        x = 0.5 + static_cast<double>(rng() >> 11) * 0x1.0p-53;
    }
    return v;
}

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
double time_seconds(F&& f) {
    auto t0 = Clock::now();
    f();
    auto t1 = Clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

double median_of(std::vector<double>& times) {
    std::sort(times.begin(), times.end());
    int mid = int(times.size()) / 2;
    if (times.size() % 2 == 1) return times[mid];
    return 0.5 * (times[mid - 1] + times[mid]);
}

template <class F>
double median_timing(F&& f, int repeats) {
    f();  // warm-up, not measured
    std::vector<double> times(repeats);
    for (double& t : times) t = time_seconds(f);
    return median_of(times);
}

// Times two bodies with interleaved repetitions so load drift on the host
// hits both the same way; the pair order flips every round.
template <class FA, class FB>
std::pair<double, double> paired_median_timing(FA&& fa, FB&& fb, int repeats) {
    fa();  // warm-up, not measured
    fb();
    std::vector<double> ta(repeats);
    std::vector<double> tb(repeats);
    for (int r = 0; r < repeats; ++r) {
        if (r % 2 == 0) {
            ta[r] = time_seconds(fa);
            tb[r] = time_seconds(fb);
        } else {
            tb[r] = time_seconds(fb);
            ta[r] = time_seconds(fa);
        }
    }
    return {median_of(ta), median_of(tb)};
}

double max_rel_error(std::span<const double> got, std::span<const double> want) {
    double worst = 0.0;
    for (std::size_t i = 0; i < want.size(); ++i) {
        double d = std::abs(got[i] - want[i]);
        if (d == 0.0) continue;
        worst = std::max(worst, d / std::max(std::abs(want[i]), 1e-300));
    }
    return worst;
}

}  // namespace

BenchReport run_bench(const BenchConfig& cfg, const CsrMatrix& a) {
    if (cfg.repeats < 1) throw std::invalid_argument("run_bench: repeats must be >= 1");
    if (cfg.workers < 1) throw std::invalid_argument("run_bench: workers must be >= 1");
    if (cfg.t < 1) throw std::invalid_argument("run_bench: t must be >= 1");

    BenchReport rep;
    rep.matrix = cfg.matrix_name;
    rep.kernel = kernel_name(cfg.kernel);
    rep.t = cfg.t;
    rep.groups = cfg.groups > 0 ? cfg.groups : cfg.workers;
    rep.workers = cfg.workers;
    rep.repeats = cfg.repeats;
    rep.baseline_only = cfg.baseline_only;

    if (cfg.kernel == KernelKind::Spmv) {
        rep.n_rows = a.n_rows;
        rep.n_cols = a.n_cols;
        rep.nnz = a.nnz();
        std::vector<double> x = seeded_vector(a.n_cols, cfg.seed);
        std::vector<double> baseline;
        auto run_base = [&] { baseline = spmv_csr_baseline(a, x); };
        if (cfg.baseline_only) {
            rep.baseline_seconds = median_timing(run_base, cfg.repeats);
            return rep;
        }

        CodeletPlan plan;
        rep.inspector_seconds =
            time_seconds([&] { plan = inspect(KernelKind::Spmv, a, cfg.t, rep.groups); });
        rep.breakdown = operation_breakdown(plan);

        Executor exec(cfg.workers);
        std::vector<double> y(a.n_rows);
        std::tie(rep.baseline_seconds, rep.executor_seconds) = paired_median_timing(
            run_base, [&] { run_spmv(plan, a, x, y, exec); }, cfg.repeats);
        rep.max_rel_error = max_rel_error(y, baseline);
        rep.verified = rep.max_rel_error <= cfg.verify_tol;
    } else {
        TriangularMatrix l = lower_triangular(a);
        rep.n_rows = l.csr().n_rows;
        rep.n_cols = l.csr().n_cols;
        rep.nnz = l.csr().nnz();
        std::vector<double> b = seeded_vector(l.n(), cfg.seed);
        std::vector<double> baseline;
        auto run_base = [&] { baseline = sptrsv_csr_baseline(l, b); };
        if (cfg.baseline_only) {
            rep.baseline_seconds = median_timing(run_base, cfg.repeats);
            return rep;
        }

        CodeletPlan plan;
        rep.inspector_seconds = time_seconds(
            [&] { plan = inspect(KernelKind::Sptrsv, l.csr(), cfg.t, rep.groups); });
        rep.breakdown = operation_breakdown(plan);

        Executor exec(cfg.workers);
        std::vector<double> x(l.n());
        std::vector<double> acc(l.n());
        std::tie(rep.baseline_seconds, rep.executor_seconds) = paired_median_timing(
            run_base, [&] { run_sptrsv(plan, l, b, x, acc, exec); }, cfg.repeats);
        rep.max_rel_error = max_rel_error(x, baseline);
        rep.verified = rep.max_rel_error <= cfg.verify_tol;
    }

    rep.gflops = static_cast<double>(theoretical_flops(cfg.kernel, rep.n_rows, rep.nnz)) /
                 rep.executor_seconds / 1e9;
    rep.ner = compute_ner(rep.inspector_seconds, rep.baseline_seconds, rep.executor_seconds,
                          rep.amortizable);
    return rep;
}

ReportFormat parse_report_format(const std::string& s) {
    if (s == "csv") return ReportFormat::Csv;
    if (s == "json") return ReportFormat::Json;
    if (s == "text") return ReportFormat::Text;
    throw std::invalid_argument("unknown report format '" + s + "'");
}

namespace {

// Shortest round-trip decimal rendering.
std::string num(double v) { return nlohmann::json(v).dump(); }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

const char kCsvHeader[] =
    "matrix,kernel,n_rows,n_cols,nnz,t,groups,workers,repeats,inspector_s,executor_s,"
    "baseline_s,gflops,ner,frac_blas,frac_psc1,frac_psc2,verified,max_rel_error";

std::string csv_row(const BenchReport& r) {
    std::string row = csv_field(r.matrix);
    row += "," + r.kernel;
    row += "," + std::to_string(r.n_rows);
    row += "," + std::to_string(r.n_cols);
    row += "," + std::to_string(r.nnz);
    row += "," + std::to_string(r.t);
    row += "," + std::to_string(r.groups);
    row += "," + std::to_string(r.workers);
    row += "," + std::to_string(r.repeats);
    if (r.baseline_only) {
        row += ",,," + num(r.baseline_seconds) + ",,,,,,,";
        return row;
    }
    row += "," + num(r.inspector_seconds);
    row += "," + num(r.executor_seconds);
    row += "," + num(r.baseline_seconds);
    row += "," + num(r.gflops);
    row += "," + (r.amortizable ? num(r.ner) : std::string("not_amortizable"));
    row += "," + num(r.breakdown.blas);
    row += "," + num(r.breakdown.psc1);
    row += "," + num(r.breakdown.psc2);
    row += r.verified ? ",1" : ",0";
    row += "," + num(r.max_rel_error);
    return row;
}

nlohmann::ordered_json report_json(const BenchReport& r) {
    nlohmann::ordered_json j;
    j["matrix"] = r.matrix;
    j["kernel"] = r.kernel;
    j["n_rows"] = r.n_rows;
    j["n_cols"] = r.n_cols;
    j["nnz"] = r.nnz;
    j["t"] = r.t;
    j["groups"] = r.groups;
    j["workers"] = r.workers;
    j["repeats"] = r.repeats;
    j["baseline_only"] = r.baseline_only;
    j["baseline_seconds"] = r.baseline_seconds;
    if (r.baseline_only) {
        j["inspector_seconds"] = nullptr;
        j["executor_seconds"] = nullptr;
        j["gflops"] = nullptr;
        j["ner"] = nullptr;
        j["amortizable"] = nullptr;
        j["breakdown"] = nullptr;
        j["verified"] = nullptr;
        j["max_rel_error"] = nullptr;
        return j;
    }
    j["inspector_seconds"] = r.inspector_seconds;
    j["executor_seconds"] = r.executor_seconds;
    j["gflops"] = r.gflops;
    j["ner"] = r.amortizable ? nlohmann::ordered_json(r.ner) : nlohmann::ordered_json();
    j["amortizable"] = r.amortizable;
    j["breakdown"] = {{"blas", r.breakdown.blas},
                      {"psc_1", r.breakdown.psc1},
                      {"psc_2", r.breakdown.psc2}};
    j["verified"] = r.verified;
    j["max_rel_error"] = r.max_rel_error;
    return j;
}

std::string report_text(const BenchReport& r) {
    std::string out;
    out += "matrix: " + r.matrix + "\n";
    out += "kernel: " + r.kernel + "\n";
    out += "size: " + std::to_string(r.n_rows) + " x " + std::to_string(r.n_cols) + ", nnz " +
           std::to_string(r.nnz) + "\n";
    out += "config: t " + std::to_string(r.t) + ", groups " + std::to_string(r.groups) +
           ", workers " + std::to_string(r.workers) + ", repeats " +
           std::to_string(r.repeats) + "\n";
    out += "baseline: " + num(r.baseline_seconds) + " s\n";
    if (r.baseline_only) {
        out += "baseline only\n";
        return out;
    }
    out += "inspector: " + num(r.inspector_seconds) + " s\n";
    out += "executor: " + num(r.executor_seconds) + " s\n";
    out += "gflops: " + num(r.gflops) + "\n";
    out += "ner: " + (r.amortizable ? num(r.ner) : std::string("not amortizable")) + "\n";
    out += "breakdown: blas " + num(r.breakdown.blas) + " psc_i " + num(r.breakdown.psc1) +
           " psc_ii " + num(r.breakdown.psc2) + "\n";
    out += "verified: " + std::string(r.verified ? "yes" : "no") + ", max rel error " +
           num(r.max_rel_error) + "\n";
    return out;
}

}  // namespace

std::string emit_report(const BenchReport& report, ReportFormat format) {
    return emit_reports(std::span<const BenchReport>(&report, 1), format);
}

std::string emit_reports(std::span<const BenchReport> reports, ReportFormat format) {
    switch (format) {
        case ReportFormat::Csv: {
            std::string out = kCsvHeader;
            out += "\n";
            for (const BenchReport& r : reports) {
                out += csv_row(r);
                out += "\n";
            }
            return out;
        }
        case ReportFormat::Json: {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (const BenchReport& r : reports) arr.push_back(report_json(r));
            return arr.dump(2) + "\n";
        }
        default: {
            std::string out;
            for (std::size_t i = 0; i < reports.size(); ++i) {
                if (i) out += "\n";
                out += report_text(reports[i]);
            }
            return out;
        }
    }
}

void write_vector_text(std::ostream& os, std::span<const double> v) {
    for (double x : v) os << nlohmann::json(x).dump() << "\n";
}

}  // namespace psc
