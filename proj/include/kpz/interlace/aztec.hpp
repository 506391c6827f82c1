#pragma once

#include <functional>
#include <vector>

#include "kpz/core/error.hpp"
#include "kpz/core/random.hpp"

namespace kpz {

// Shifted array z_i^n (0-based storage z[n-1][i-1]) for the shuffling
// dynamics, with the positions before the last step kept for rendering.
struct AztecArray {
    int N = 0;
    double q = 0.5;
    int t = 0;
    std::vector<std::vector<long>> z;
    std::vector<std::vector<long>> prev;

    long at(int i, int n) const { return z[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(i - 1)]; }

    // z_i^{n+1} <= z_i^n <= z_{i+1}^{n+1}, levels strictly increasing
    bool interlaced() const {
        for (int n = 1; n <= N; ++n)
            for (int i = 1; i < n; ++i)
                if (!(at(i, n) < at(i + 1, n))) return false;
        for (int n = 1; n < N; ++n)
            for (int i = 1; i <= n; ++i)
                if (!(at(i, n + 1) <= at(i, n) && at(i, n) <= at(i + 1, n + 1))) return false;
        return true;
    }
};

inline AztecArray aztec_init(int N, double q) {
    if (N < 1) throw InvalidParameter("need at least one level");
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidParameter("q must lie in [0,1]");
    AztecArray a;
    a.N = N;
    a.q = q;
    for (int n = 1; n <= N; ++n) {
        std::vector<long> row;
        for (int i = 1; i <= n; ++i) row.push_back(i - 1);
        a.z.push_back(row);
    }
    a.prev = a.z;
    return a;
}

// One step. Level n is frozen before step n. Against the positions before the
// step, (i,n) is forced if z_i^n = z_{i-1}^{n-1} and blocked if z_i^n = z_i^{n-1};
// the rest jump with probability q. One coin per active particle is drawn,
// level by level in increasing n and i, before any update.
inline void aztec_step(AztecArray& a, Rng& rng) {
    const int step = a.t + 1;
    std::vector<std::vector<char>> coin(static_cast<std::size_t>(a.N));
    for (int n = 1; n <= a.N && n <= step; ++n)
        for (int i = 1; i <= n; ++i) coin[static_cast<std::size_t>(n - 1)].push_back(rng.bernoulli(a.q) ? 1 : 0);
    const auto old = a.z;
    auto o = [&](int i, int n) { return old[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(i - 1)]; };
    for (int n = 1; n <= a.N && n <= step; ++n)
        for (int i = 1; i <= n; ++i) {
            long v = o(i, n);
            bool forced = i >= 2 && v == o(i - 1, n - 1);
            bool blocked = i <= n - 1 && v == o(i, n - 1);
            bool jump = forced || (!blocked && coin[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(i - 1)]);
            if (jump) a.z[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(i - 1)] = v + 1;
        }
    a.prev = old;
    a.t = step;
}

inline AztecArray aztec_shuffle_run(int N, double q, int steps, Rng& rng,
                                    const std::function<void(const AztecArray&)>& on_step = {}) {
    if (steps < 0) throw InvalidParameter("steps must be nonnegative");
    AztecArray a = aztec_init(N, q);
    for (int s = 0; s < steps; ++s) {
        aztec_step(a, rng);
        if (on_step) on_step(a);
    }
    return a;
}

// x_1^n = z_1^n - n: discrete-time parallel TASEP, particle n at x_1^n.
inline std::vector<long> aztec_to_tasep(const AztecArray& a) {
    std::vector<long> out;
    for (int n = 1; n <= a.N; ++n) out.push_back(a.at(1, n) - n);
    return out;
}

} // namespace kpz
