#include "psc/pattern_gen.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace psc {

namespace {

double to_unit(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

CsrMatrix dense_block(int n) {
    require(n > 0, "dense_block: n must be positive");
    CsrMatrix a;
    a.n_rows = a.n_cols = n;
    a.row_offsets.resize(n + 1);
    a.col_indices.resize(static_cast<std::size_t>(n) * n);
    a.values.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        a.row_offsets[i] = i * n;
        for (int j = 0; j < n; ++j) {
            a.col_indices[i * n + j] = j;
            a.values[i * n + j] = static_cast<double>(i * n + j + 1);
        }
    }
    a.row_offsets[n] = n * n;
    return a;
}

CsrMatrix banded(int n, int bandwidth, bool lower_only) {
    require(n > 0, "banded: n must be positive");
    require(bandwidth >= 0, "banded: bandwidth must be nonnegative");
    CsrMatrix a;
    a.n_rows = a.n_cols = n;
    a.row_offsets.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) {
        int lo = std::max(0, i - bandwidth);
        int hi = lower_only ? i : std::min(n - 1, i + bandwidth);
        for (int j = lo; j <= hi; ++j) {
            a.col_indices.push_back(j);
            a.values.push_back(static_cast<double>(a.col_indices.size()));
        }
        a.row_offsets[i + 1] = static_cast<int>(a.col_indices.size());
    }
    return a;
}

CsrMatrix scattered_gather(int rows, std::vector<int> cols) {
    require(rows > 0, "scattered_gather: rows must be positive");
    require(!cols.empty(), "scattered_gather: column set must be nonempty");
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    require(cols.front() >= 0, "scattered_gather: negative column");

    CsrMatrix a;
    a.n_rows = rows;
    a.n_cols = cols.back() + 1;
    a.row_offsets.assign(rows + 1, 0);
    int w = static_cast<int>(cols.size());
    a.col_indices.reserve(static_cast<std::size_t>(rows) * w);
    a.values.reserve(static_cast<std::size_t>(rows) * w);
    for (int i = 0; i < rows; ++i) {
        for (int j : cols) {
            a.col_indices.push_back(j);
            a.values.push_back(static_cast<double>(a.col_indices.size()));
        }
        a.row_offsets[i + 1] = static_cast<int>(a.col_indices.size());
    }
    return a;
}

CsrMatrix random_uniform(int rows, int cols, double density, std::uint64_t seed) {
    require(rows > 0 && cols > 0, "random_uniform: dimensions must be positive");
    require(density >= 0.0 && density <= 1.0, "random_uniform: density must be in [0, 1]");
    std::mt19937_64 rng(seed);
    CsrMatrix a;
    a.n_rows = rows;
    a.n_cols = cols;
    a.row_offsets.assign(rows + 1, 0);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            if (to_unit(rng()) < density) {
                a.col_indices.push_back(j);
                a.values.push_back(0.5 + to_unit(rng()));
            }
        }
        a.row_offsets[i + 1] = static_cast<int>(a.col_indices.size());
    }
    return a;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

int to_int(const std::string& s, const std::string& spec) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("pattern spec '" + spec + "': bad integer '" + s + "'");
    }
}

double to_double(const std::string& s, const std::string& spec) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("pattern spec '" + spec + "': bad number '" + s + "'");
    }
}

}  // namespace

CsrMatrix generate_pattern(const std::string& spec, std::uint64_t default_seed) {
    std::string s = spec;
    s.erase(std::remove_if(s.begin(), s.end(),
                           [](unsigned char c) { return std::isspace(c); }),
            s.end());
    auto open = s.find('(');
    if (open == std::string::npos || s.back() != ')') {
        throw std::invalid_argument("pattern spec '" + spec + "': expected name(args)");
    }
    std::string name = s.substr(0, open);
    std::vector<std::string> args = split(s.substr(open + 1, s.size() - open - 2), ',');

    auto arity = [&](std::size_t lo, std::size_t hi) {
        if (args.size() < lo || args.size() > hi) {
            throw std::invalid_argument("pattern spec '" + spec + "': wrong argument count");
        }
    };
    if (name == "dense_block") {
        arity(1, 1);
        return dense_block(to_int(args[0], spec));
    }
    if (name == "banded") {
        arity(2, 3);
        bool lower = false;
        if (args.size() == 3) {
            if (args[2] != "lower") {
                throw std::invalid_argument("pattern spec '" + spec +
                                            "': third argument must be 'lower'");
            }
            lower = true;
        }
        return banded(to_int(args[0], spec), to_int(args[1], spec), lower);
    }
    if (name == "random_uniform") {
        arity(3, 4);
        std::uint64_t seed = args.size() == 4
                                 ? static_cast<std::uint64_t>(std::stoull(args[3]))
                                 : default_seed;
        return random_uniform(to_int(args[0], spec), to_int(args[1], spec),
                              to_double(args[2], spec), seed);
    }
    if (name == "scattered_gather") {
        arity(2, 2);
        std::vector<int> cols;
        for (const std::string& c : split(args[1], ':')) cols.push_back(to_int(c, spec));
        return scattered_gather(to_int(args[0], spec), std::move(cols));
    }
    throw std::invalid_argument("pattern spec '" + spec + "': unknown generator '" + name + "'");
}

}  // namespace psc
