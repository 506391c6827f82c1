#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "kpz/core/error.hpp"
#include "kpz/lpp/weights.hpp"

namespace kpz {

struct PathResult {
    double value = 0.0;
    std::vector<std::pair<long, long>> path;
    std::pair<long, long> endpoint{0, 0};
};

// Last passage table G(i,j), 1 <= i <= n, 1 <= j <= m, row-major.
struct LppTable {
    long n = 0, m = 0;
    std::vector<double> g;
    double operator()(long i, long j) const {
        if (i < 1 || i > n || j < 1 || j > m) throw OutOfWindow("outside last passage table");
        return g[static_cast<std::size_t>((i - 1) * m + (j - 1))];
    }
};

inline LppTable lpp_table(const WeightGrid& w, long n, long m) {
    if (n < 1 || m < 1 || !w.contains(1, 1) || !w.contains(n, m)) throw OutOfWindow("endpoint outside grid");
    LppTable t;
    t.n = n;
    t.m = m;
    t.g.assign(static_cast<std::size_t>(n * m), 0.0);
    for (long i = 1; i <= n; ++i)
        for (long j = 1; j <= m; ++j) {
            double best = 0.0;
            if (i > 1) best = t.g[static_cast<std::size_t>((i - 2) * m + (j - 1))];
            if (j > 1) best = std::max(best, t.g[static_cast<std::size_t>((i - 1) * m + (j - 2))]);
            t.g[static_cast<std::size_t>((i - 1) * m + (j - 1))] = w(i, j) + best;
        }
    return t;
}

// G(n,m) with one row of memory.
inline double lpp_value(const WeightGrid& w, long n, long m) {
    if (n < 1 || m < 1 || !w.contains(1, 1) || !w.contains(n, m)) throw OutOfWindow("endpoint outside grid");
    std::vector<double> row(static_cast<std::size_t>(m), 0.0);
    for (long i = 1; i <= n; ++i) {
        double left = 0.0;
        for (long j = 1; j <= m; ++j) {
            double& up = row[static_cast<std::size_t>(j - 1)];
            up = w(i, j) + std::max(up, left);
            left = up;
        }
    }
    return row.back();
}

// Optimal path from (1,1). Backtracking prefers the predecessor (i,j-1),
// i.e. a (0,1) step, on ties.
inline PathResult lpp_point_to_point(const WeightGrid& w, long n, long m) {
    LppTable t = lpp_table(w, n, m);
    PathResult r;
    r.value = t(n, m);
    r.endpoint = {n, m};
    long i = n, j = m;
    r.path.push_back({i, j});
    while (i > 1 || j > 1) {
        if (i == 1) --j;
        else if (j == 1) --i;
        else if (t(i, j - 1) >= t(i - 1, j)) --j;
        else --i;
        r.path.push_back({i, j});
    }
    std::reverse(r.path.begin(), r.path.end());
    return r;
}

// Paths may start anywhere on L = {i+j = 2}. The grid must cover the
// backward cone i in [2-m, n], j in [2-n, m].
inline PathResult lpp_point_to_line(const WeightGrid& w, long n, long m) {
    if (n + m < 2) throw InvalidParameter("endpoint below the line");
    const long ilo = 2 - m, jlo = 2 - n;
    if (!w.contains(ilo, m) || !w.contains(n, jlo) || !w.contains(n, m))
        throw OutOfWindow("window does not cover the backward cone of the endpoint");
    const long R = n - ilo + 1, C = m - jlo + 1;
    const double none = -1.0;
    std::vector<double> g(static_cast<std::size_t>(R * C), none);
    auto G = [&](long i, long j) -> double& { return g[static_cast<std::size_t>((i - ilo) * C + (j - jlo))]; };
    for (long i = ilo; i <= n; ++i)
        for (long j = jlo; j <= m; ++j) {
            if (i + j < 2) continue;
            double best = 0.0;
            if (i + j > 2) {
                best = none;
                if (i > ilo && i - 1 + j >= 2) best = std::max(best, G(i - 1, j));
                if (j > jlo && i + j - 1 >= 2) best = std::max(best, G(i, j - 1));
            }
            G(i, j) = w(i, j) + best;
        }
    PathResult r;
    r.value = G(n, m);
    r.endpoint = {n, m};
    long i = n, j = m;
    r.path.push_back({i, j});
    while (i + j > 2) {
        bool left_ok = j > jlo && i + j - 1 >= 2;
        bool down_ok = i > ilo && i - 1 + j >= 2;
        if (left_ok && (!down_ok || G(i, j - 1) >= G(i - 1, j))) --j;
        else --i;
        r.path.push_back({i, j});
    }
    std::reverse(r.path.begin(), r.path.end());
    return r;
}

// Discrete PNG reading: t = i+j-1, x = i-j.
inline double png_slice(const LppTable& g, long x, long t) {
    if (((x + t + 1) % 2 + 2) % 2 != 0) throw InvalidQuery("x and t-1 must have equal parity");
    long i = (t + 1 + x) / 2, j = (t + 1 - x) / 2;
    if (i < 1 || j < 1) throw InvalidQuery("no lattice site for (x,t)");
    return g(i, j);
}

// Indicator of {G(n,m) <= tau}; under the coupling this is the event that
// particle m has made at least n jumps, i.e. x_m(tau) >= -m+n.
inline bool tasep_slice(const WeightGrid& w, double tau, long n, long m) {
    if (w.law.law != Law::exponential) throw InvalidLaw("continuous-time slicing needs exponential weights");
    return lpp_value(w, n, m) <= tau;
}

// Positions x_m(tau), m = 1..M, of TASEP from step initial data read off a
// last passage table: x_m = -m + #{n : G(n,m) <= tau}. The table must be
// tall enough that G(n_max, m) > tau for every m.
inline std::vector<long> tasep_positions_from_lpp(const LppTable& g, double tau, long M) {
    if (M > g.m) throw OutOfWindow("more particles than table columns");
    std::vector<long> x(static_cast<std::size_t>(M));
    for (long m = 1; m <= M; ++m) {
        long jumps = 0;
        while (jumps < g.n && g(jumps + 1, m) <= tau) ++jumps;
        if (jumps == g.n) throw OutOfWindow("table too short for the requested time");
        x[static_cast<std::size_t>(m - 1)] = -m + jumps;
    }
    return x;
}

} // namespace kpz
