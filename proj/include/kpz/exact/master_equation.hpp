#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "kpz/core/error.hpp"
#include "kpz/exact/fn.hpp"
#include "kpz/exact/schuetz.hpp"

namespace kpz {

// Forward equation of continuous-time TASEP for N <= 4 particles, solved by
// uniformization on configurations with x_1 <= y_1 + W. The leading
// particle is free, so the escaped mass is exactly P(Poisson(t) > W); the
// call fails if that exceeds tail_tol.
inline std::map<std::vector<long>, double> master_equation_oracle(const std::vector<long>& y, double t, long W,
                                                                  double tail_tol = 1e-12) {
    const std::size_t N = y.size();
    if (N == 0 || N > 4) throw InvalidParameter("oracle supports 1 <= N <= 4");
    if (!strictly_decreasing(y)) throw InvalidInput("positions must be strictly decreasing");
    if (!(t >= 0.0)) throw InvalidParameter("t must be nonnegative");
    if (poisson_tail_bound(W, t) > tail_tol) throw OutOfWindow("escape probability above tolerance; enlarge the window");

    std::vector<std::vector<long>> states;
    std::map<std::vector<long>, std::size_t> index;
    for_each_reachable(y, W, [&](const std::vector<long>& x) {
        index[x] = states.size();
        states.push_back(x);
    });
    const std::size_t S = states.size();
    // outgoing jumps per state; rate 1 each
    std::vector<std::vector<std::size_t>> to(S);
    for (std::size_t s = 0; s < S; ++s) {
        const auto& x = states[s];
        for (std::size_t i = 0; i < N; ++i) {
            bool free = i == 0 ? x[0] + 1 <= y[0] + W : x[i] + 1 < x[i - 1];
            if (!free) continue;
            auto z = x;
            ++z[i];
            to[s].push_back(index.at(z));
        }
    }
    const double lambda = static_cast<double>(N);
    std::vector<double> p(S, 0.0), acc(S, 0.0), nxt(S);
    p[index.at(y)] = 1.0;
    double weight = std::exp(-lambda * t);
    for (long k = 0;; ++k) {
        for (std::size_t s = 0; s < S; ++s) acc[s] += weight * p[s];
        if (static_cast<double>(k) > lambda * t && weight < 1e-18) break;
        if (k > 100000) throw AccuracyFailure("uniformization did not converge");
        // p <- p (I + Q/lambda); jumps out of the window are dropped
        for (std::size_t s = 0; s < S; ++s) nxt[s] = p[s] * (1.0 - static_cast<double>(N) / lambda);
        for (std::size_t s = 0; s < S; ++s) {
            const auto& x = states[s];
            double stay_blocked = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                bool free = i == 0 ? true : x[i] + 1 < x[i - 1];
                if (!free) stay_blocked += 1.0;
            }
            nxt[s] += p[s] * stay_blocked / lambda;
            for (std::size_t d : to[s]) nxt[d] += p[s] / lambda;
        }
        std::swap(p, nxt);
        weight *= lambda * t / static_cast<double>(k + 1);
    }
    std::map<std::vector<long>, double> out;
    for (std::size_t s = 0; s < S; ++s) out[states[s]] = acc[s];
    return out;
}

} // namespace kpz
