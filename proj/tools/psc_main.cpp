#include <CLI11.hpp>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "psc/bench.hpp"
#include "psc/matrix_market.hpp"
#include "psc/miner.hpp"
#include "psc/pattern_gen.hpp"
#include "psc/plan_io.hpp"

namespace {

constexpr const char kSynthPrefix[] = "synth:";

psc::CsrMatrix load_source(const std::string& src, std::uint64_t seed) {
    if (src.rfind(kSynthPrefix, 0) == 0) {
        return psc::generate_pattern(src.substr(sizeof(kSynthPrefix) - 1), seed);
    }
    return psc::read_matrix_market_file(src);
}

std::vector<std::string> read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open manifest '" + path + "'");
    }
    std::vector<std::string> sources;
    std::string line;
    while (std::getline(in, line)) {
        auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        auto end = line.find_last_not_of(" \t\r");
        line = line.substr(begin, end - begin + 1);
        if (line.empty() || line[0] == '#') continue;
        sources.push_back(line);
    }
    return sources;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"inspector-executor for sparse kernels built from strided codelets"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "inspect, execute, verify and time a kernel");
    std::string kernel_s;
    run->add_option("--kernel", kernel_s, "kernel to run")
        ->required()
        ->check(CLI::IsMember({"spmv", "sptrsv"}));
    std::vector<std::string> sources;
    run->add_option("--matrix", sources,
                    "MatrixMarket file or synth:<generator>(...); repeatable");
    std::string manifest;
    run->add_option("--manifest", manifest, "file with one matrix source per line");
    int t = 3;
    run->add_option("--t", t, "mining window, consecutive rows per region")
        ->check(CLI::PositiveNumber);
    int groups = 0;
    run->add_option("--groups", groups,
                    "target partition count for independent rows (default: workers)")
        ->check(CLI::NonNegativeNumber);
    int workers = 1;
    run->add_option("--workers", workers, "executor worker threads")
        ->check(CLI::PositiveNumber);
    int repeats = 5;
    run->add_option("--repeats", repeats, "timed runs per median")->check(CLI::PositiveNumber);
    std::string format_s = "text";
    run->add_option("--format", format_s, "report format")
        ->check(CLI::IsMember({"csv", "json", "text"}));
    double verify_tol = 1e-12;
    run->add_option("--verify-tol", verify_tol, "max relative error accepted");
    std::string dump_plan;
    run->add_option("--dump-plan", dump_plan, "write the mined plan as JSON (single matrix)");
    bool baseline_only = false;
    run->add_flag("--baseline-only", baseline_only, "time only the CSR baseline");

    CLI11_PARSE(app, argc, argv);

    try {
        std::uint64_t seed = 42;
        if (const char* env = std::getenv("PSC_SEED")) {
            seed = std::stoull(env);
        }
        if (!manifest.empty()) {
            for (std::string& s : read_manifest(manifest)) sources.push_back(std::move(s));
        }
        if (sources.empty()) {
            throw std::runtime_error("no matrix given; use --matrix or --manifest");
        }
        if (!dump_plan.empty() && sources.size() != 1) {
            throw std::runtime_error("--dump-plan needs exactly one matrix");
        }
        psc::KernelKind kernel =
            kernel_s == "spmv" ? psc::KernelKind::Spmv : psc::KernelKind::Sptrsv;

        std::vector<psc::BenchReport> reports;
        bool all_verified = true;
        for (const std::string& src : sources) {
            psc::CsrMatrix a = load_source(src, seed);
            psc::BenchConfig cfg;
            cfg.matrix_name = src;
            cfg.kernel = kernel;
            cfg.t = t;
            cfg.groups = groups;
            cfg.workers = workers;
            cfg.repeats = repeats;
            cfg.verify_tol = verify_tol;
            cfg.baseline_only = baseline_only;
            cfg.seed = seed;
            psc::BenchReport rep = psc::run_bench(cfg, a);
            if (!baseline_only && !rep.verified) all_verified = false;

            if (!dump_plan.empty()) {
                psc::CsrMatrix operated =
                    kernel == psc::KernelKind::Sptrsv ? psc::lower_triangular(a).csr() : a;
                psc::CodeletPlan plan =
                    psc::inspect(kernel, operated, t, groups > 0 ? groups : workers);
                std::ofstream out(dump_plan);
                if (!out) {
                    throw std::runtime_error("cannot open '" + dump_plan + "' for writing");
                }
                psc::write_plan_json(out, plan);
            }
            reports.push_back(std::move(rep));
        }
        std::cout << psc::emit_reports(reports, psc::parse_report_format(format_s));
        return all_verified ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "psc: " << e.what() << "\n";
        return 2;
    }
}
