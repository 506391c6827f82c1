#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "kpz/core/error.hpp"
#include "kpz/core/random.hpp"

namespace kpz {

// Triangular array x_i^n, 1 <= i <= n <= N, stored 0-based as x[n-1][i-1].
struct InterlacedArray {
    int N = 0;
    std::vector<std::vector<long>> x;
    double time = 0.0;

    long at(int i, int n) const { return x[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(i - 1)]; }
    long& at(int i, int n) { return x[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(i - 1)]; }

    bool well_shaped() const {
        if (static_cast<int>(x.size()) != N) return false;
        for (int n = 1; n <= N; ++n)
            if (static_cast<int>(x[static_cast<std::size_t>(n - 1)].size()) != n) return false;
        return true;
    }

    // x_i^{n+1} < x_i^n <= x_{i+1}^{n+1}
    bool interlaced() const {
        if (!well_shaped()) return false;
        for (int n = 1; n < N; ++n)
            for (int i = 1; i <= n; ++i)
                if (!(at(i, n + 1) < at(i, n) && at(i, n) <= at(i + 1, n + 1))) return false;
        return true;
    }
};

inline InterlacedArray interlace_init(int N) {
    if (N < 1) throw InvalidParameter("need at least one level");
    InterlacedArray s;
    s.N = N;
    for (int n = 1; n <= N; ++n) {
        std::vector<long> row;
        for (int i = 1; i <= n; ++i) row.push_back(i - n - 1);
        s.x.push_back(row);
    }
    return s;
}

inline InterlacedArray interlace_from_levels(const std::vector<std::vector<long>>& levels) {
    InterlacedArray s;
    s.N = static_cast<int>(levels.size());
    s.x = levels;
    if (!s.interlaced()) throw InvalidInput("array violates the interlacing constraint");
    return s;
}

// Jump attempt of particle (k, n). Blocked when x_k^n + 1 would reach x_k^{n-1};
// on success the particles (k+l, n+l) sitting at the old position move along.
// Returns the number of particles moved (0 if blocked).
inline int interlace_attempt(InterlacedArray& s, int k, int n) {
    if (n < 1 || n > s.N || k < 1 || k > n) throw InvalidParameter("particle index out of range");
    const long old = s.at(k, n);
    if (k < n && old + 1 >= s.at(k, n - 1)) return 0;
    s.at(k, n) = old + 1;
    int moved = 1;
    for (int l = 1; n + l <= s.N; ++l) {
        if (s.at(k + l, n + l) != old) break;
        s.at(k + l, n + l) = old + 1;
        ++moved;
    }
    return moved;
}

struct InterlaceEvent {
    double time;
    int i, n;
    int moved;
};

// Every particle carries a rate-1 clock; equivalently the next attempt comes
// after Exp(M) with M = N(N+1)/2 and picks a uniform particle. Draw order per
// attempt: waiting time, then particle index.
inline InterlacedArray interlace_ct_run(InterlacedArray s, double t, Rng& rng,
                                        const std::function<void(const InterlacedArray&, const InterlaceEvent&)>& on_event = {}) {
    if (!(t >= 0.0)) throw InvalidParameter("time must be nonnegative");
    if (!s.interlaced()) throw InvalidInput("array violates the interlacing constraint");
    const long M = static_cast<long>(s.N) * (s.N + 1) / 2;
    const double end = s.time + t;
    for (;;) {
        double next = s.time + rng.exponential(static_cast<double>(M));
        if (next > end) break;
        s.time = next;
        long pick = static_cast<long>(rng.uniform() * static_cast<double>(M));
        if (pick >= M) pick = M - 1;
        int n = static_cast<int>((std::sqrt(8.0 * pick + 1.0) - 1.0) / 2.0);
        while (static_cast<long>(n) * (n + 1) / 2 > pick) --n;
        while (static_cast<long>(n + 1) * (n + 2) / 2 <= pick) ++n;
        int i = static_cast<int>(pick - static_cast<long>(n) * (n + 1) / 2) + 1;
        ++n;
        int moved = interlace_attempt(s, i, n);
        if (on_event) on_event(s, {s.time, i, n, moved});
    }
    s.time = end;
    return s;
}

// {x_1^n}: the TASEP particles, particle n at x_1^n.
inline std::vector<long> project_level_edge(const InterlacedArray& s) {
    std::vector<long> out;
    for (int n = 1; n <= s.N; ++n) out.push_back(s.at(1, n));
    return out;
}

} // namespace kpz
