// support.hpp
// Shared helpers for the test binaries: subprocess capture, file slurping,
// seeded random quiver generation, and an independent Catalan recurrence.

#ifndef CQ_TESTS_SUPPORT_HPP
#define CQ_TESTS_SUPPORT_HPP

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cq/quiver.hpp"

namespace support {

struct RunResult {
    std::string out;
    int code = -1;
};

// Runs a shell command, captures stdout, returns the exit code. stderr is
// dropped so diagnostics don't pollute the comparison.
inline RunResult run(const std::string& cmd) {
    RunResult r;
    std::string full = cmd + " 2>/dev/null";
    FILE* p = popen(full.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return r;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

// Random quiver without loops; 2-cycles and parallel arrows optional.
inline cq::Quiver random_quiver(std::mt19937& rng, int max_vertices,
                                bool allow_two_cycles = false) {
    std::uniform_int_distribution<int> nv(1, max_vertices);
    int n = nv(rng);
    cq::Quiver q(n);
    if (n < 2) return q;
    std::uniform_int_distribution<int> na(0, 2 * n);
    std::uniform_int_distribution<int> pick(0, n - 1);
    int arrows = na(rng);
    for (int i = 0; i < arrows; ++i) {
        int s = pick(rng), t = pick(rng);
        if (s == t) continue;
        if (!allow_two_cycles && q.count_arrows(t, s) > 0) continue;
        q.add_arrow("r" + std::to_string(i), s, t);
    }
    return q;
}

// Random skew-symmetric matrix with entries bounded by max_abs.
inline cq::ExchangeMatrix random_matrix(std::mt19937& rng, int max_vertices,
                                        long long max_abs) {
    std::uniform_int_distribution<int> nv(2, max_vertices);
    int n = nv(rng);
    cq::ExchangeMatrix m = cq::ExchangeMatrix::zero(n);
    std::uniform_int_distribution<long long> entry(-max_abs, max_abs);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            long long v = entry(rng);
            m.b[i][j] = v;
            m.b[j][i] = -v;
        }
    return m;
}

// Catalan numbers by the convolution recurrence; independent of any
// enumeration being verified against it.
inline long long catalan(int n) {
    std::vector<long long> c(n + 1, 0);
    c[0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = 0; j < i; ++j) c[i] += c[j] * c[i - 1 - j];
    return c[n];
}

inline std::string bin() { return CQ_BIN; }
inline std::string corpus_dir() { return CQ_CORPUS_DIR; }

} // namespace support

#endif
