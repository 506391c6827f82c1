#pragma once

#include <functional>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "kpz/core/error.hpp"
#include "kpz/exact/fn.hpp"

namespace kpz {

struct SchuetzInput {
    std::vector<long> y;  // y_1 > ... > y_N
    std::vector<long> x;  // x_1 > ... > x_N
    double t = 0.0;
};

inline bool strictly_decreasing(const std::vector<long>& v) {
    for (std::size_t k = 1; k < v.size(); ++k)
        if (!(v[k] < v[k - 1])) return false;
    return true;
}

// G(x;t) = det[F_{i-j}(x_{N+1-i} - y_{N+1-j}, t)]_{i,j=1..N}
inline double schuetz_transition(const SchuetzInput& in) {
    const long N = static_cast<long>(in.y.size());
    if (N == 0 || in.x.size() != in.y.size()) throw InvalidInput("x and y must have equal nonzero length");
    if (!strictly_decreasing(in.x) || !strictly_decreasing(in.y)) throw InvalidInput("positions must be strictly decreasing");
    Eigen::MatrixXd A(N, N);
    for (long i = 1; i <= N; ++i)
        for (long j = 1; j <= N; ++j)
            A(i - 1, j - 1) = f_n(i - j, in.x[static_cast<std::size_t>(N - i)] - in.y[static_cast<std::size_t>(N - j)], in.t);
    return N == 1 ? A(0, 0) : A.determinant();
}

// Calls f(x) for every configuration x_1 > ... > x_N with y_i <= x_i and
// x_1 <= y_1 + W.
inline void for_each_reachable(const std::vector<long>& y, long W, const std::function<void(const std::vector<long>&)>& f) {
    const std::size_t N = y.size();
    std::vector<long> x(N);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == N) {
            f(x);
            return;
        }
        long hi = i == 0 ? y[0] + W : x[i - 1] - 1;
        for (long v = y[i]; v <= hi; ++v) {
            x[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
}

// Full distribution over reachable configurations, truncated where the
// leading particle's Poisson displacement has tail below tail_tol.
inline std::map<std::vector<long>, double> schuetz_distribution(const std::vector<long>& y, double t, double tail_tol = 1e-12) {
    long W = 0;
    while (poisson_tail_bound(W, t) > tail_tol) ++W;
    std::map<std::vector<long>, double> out;
    for_each_reachable(y, W, [&](const std::vector<long>& x) { out[x] = schuetz_transition({y, x, t}); });
    return out;
}

} // namespace kpz
