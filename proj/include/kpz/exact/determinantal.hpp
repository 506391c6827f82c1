#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "kpz/core/error.hpp"
#include "kpz/exact/fn.hpp"
#include "kpz/exact/schuetz.hpp"

namespace kpz {

// lines[n-1][i-1] = x_i^n for 1 <= i <= n <= N.
using LineArray = std::vector<std::vector<long>>;

inline void check_shape(const LineArray& lines, std::size_t N) {
    if (lines.size() != N) throw InvalidInput("array must have N levels");
    for (std::size_t n = 0; n < N; ++n)
        if (lines[n].size() != n + 1) throw InvalidInput("level n must hold n positions");
}

// prod_{n<N} det[phi(x_i^n, x_j^{n+1})]_{i,j=1..n+1} * det[Psi_{N-i}(x_j^N)]_{i,j=1..N}
// with phi(x,y) = 1(x > y), the virtual row i = n+1 equal to one, and
// Psi_{N-i}(x) = F_{1-i}(x - y_{N+1-i}, t).
inline double determinantal_measure_weight(const LineArray& lines, const std::vector<long>& y, double t) {
    const std::size_t N = y.size();
    check_shape(lines, N);
    double w = 1.0;
    for (std::size_t n = 1; n < N; ++n) {
        Eigen::MatrixXd A(n + 1, n + 1);
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = 0; j <= n; ++j)
                A(i, j) = i == n ? 1.0 : (lines[n - 1][i] > lines[n][j] ? 1.0 : 0.0);
        w *= A.determinant();
        if (w == 0.0) return 0.0;
    }
    Eigen::MatrixXd P(N, N);
    for (std::size_t i = 1; i <= N; ++i)
        for (std::size_t j = 1; j <= N; ++j)
            P(i - 1, j - 1) = f_n(1 - static_cast<long>(i), lines[N - 1][j - 1] - y[N - i], t);
    return w * (N == 1 ? P(0, 0) : P.determinant());
}

// Enumerates interior variables x_i^n, 2 <= i <= n, over the interlacing set
// x_i^{n+1} < x_i^n <= x_{i+1}^{n+1}, with the edge x_1^n = x_n held fixed
// and the top coordinate capped at `hi`.
inline void for_each_interior(const std::vector<long>& x, long hi, const std::function<void(const LineArray&)>& f) {
    const std::size_t N = x.size();
    LineArray a(N);
    for (std::size_t n = 0; n < N; ++n) {
        a[n].assign(n + 1, 0);
        a[n][0] = x[n];
    }
    // fill level by level, left to right
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t n, std::size_t i) {
        if (n == N) {
            f(a);
            return;
        }
        if (i > n) {
            rec(n + 1, 1);
            return;
        }
        // level n (0-based) index i >= 1: lower bound from level n-1
        long lo = a[n - 1][i - 1];                           // x_{i}^{n} >= x_{i-1}^{n-1} (1-based: x_i^n >= x_{i-1}^{n-1})
        long up = i < n ? a[n - 1][i] - 1 : hi;              // x_{i}^{n} < x_{i}^{n-1}
        lo = std::max(lo, a[n][i - 1] + 1);
        for (long v = lo; v <= up; ++v) {
            a[n][i] = v;
            rec(n, i + 1);
        }
    };
    if (N >= 2) rec(1, 1);
    else f(a);
}

// Sum of the weights over interior variables; equals schuetz_transition.
inline double determinantal_marginal(const std::vector<long>& x, const std::vector<long>& y, double t, double tail_tol = 1e-14) {
    if (x.size() != y.size() || x.empty()) throw InvalidInput("x and y must have equal nonzero length");
    long ymax = y[0];
    long K = 0;
    while (poisson_tail_bound(K, t) > tail_tol) ++K;
    long hi = std::max(ymax, x[0]) + K + 1;
    double s = 0.0;
    for_each_interior(x, hi, [&](const LineArray& a) { s += determinantal_measure_weight(a, y, t); });
    return s;
}

} // namespace kpz
