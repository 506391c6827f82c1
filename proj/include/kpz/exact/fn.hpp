#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "kpz/core/error.hpp"

namespace kpz {

inline double poisson_pmf(long x, double t) {
    if (x < 0) return 0.0;
    if (t == 0.0) return x == 0 ? 1.0 : 0.0;
    return std::exp(static_cast<double>(x) * std::log(t) - t - std::lgamma(static_cast<double>(x) + 1.0));
}

// Upper bound on P(Poisson(t) > k) via a geometric majorant; exact enough
// for truncation certificates.
inline double poisson_tail_bound(long k, double t) {
    if (t == 0.0) return k >= 0 ? 0.0 : 1.0;
    if (static_cast<double>(k) + 2.0 <= t) return 1.0;
    double r = t / (static_cast<double>(k) + 2.0);
    return poisson_pmf(k + 1, t) / (1.0 - r);
}

inline double binom(long n, long k) {
    if (k < 0 || k > n) return 0.0;
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

struct FnValue {
    double value;
    double remainder;  // bound on the truncated tail
};

// F_n(x,t) = (1/2 pi i) oint_{|w|>1} e^{t(w-1)} / (w^{x-n+1} (w-1)^n) dw.
// n <= 0: residue at 0, F_{-m}(x) = sum_k C(m,k) (-1)^k F_0(x+k).
// n > 0: iterating F_n(x) = sum_{y>=x} F_{n-1}(y) gives
//        F_n(x) = sum_{p >= max(x,0)} F_0(p) C(p-x+n-1, n-1),
//        summed until the ratio-bounded tail is below 1e-17 of the sum.
inline FnValue f_n_certified(long n, long x, double t) {
    if (!(t >= 0.0)) throw InvalidParameter("t must be nonnegative");
    if (n <= 0) {
        long m = -n;
        double s = 0.0;
        for (long k = 0; k <= m; ++k) s += binom(m, k) * ((k % 2) ? -1.0 : 1.0) * poisson_pmf(x + k, t);
        return {s, 0.0};
    }
    long p = std::max(x, 0L);
    double sum = 0.0;
    for (long iter = 0; iter < 100000000; ++iter, ++p) {
        double term = poisson_pmf(p, t) * binom(p - x + n - 1, n - 1);
        sum += term;
        double rho = t / (p + 2.0) * (p - x + n + 1.0) / (p - x + 2.0);
        if (static_cast<double>(p) > t && rho < 0.9) {
            double tail = term * rho / (1.0 - rho);
            if (tail <= 1e-17 * std::max(sum, 1e-300) || term == 0.0) return {sum, tail};
        }
    }
    throw AccuracyFailure("F_n tail did not converge");
}

inline double f_n(long n, long x, double t) { return f_n_certified(n, x, t).value; }

// Trapezoidal rule on |w| = r; spectrally accurate for this analytic
// periodic integrand. Used as an independent check.
inline double f_n_contour(long n, long x, double t, double r = 0.0, int points = 512) {
    if (r <= 0.0) r = std::max(2.0, 1.0 + (t > 0 ? static_cast<double>(std::labs(n)) / t : 1.0));
    std::complex<double> acc = 0.0;
    for (int k = 0; k < points; ++k) {
        double th = 2.0 * std::numbers::pi * (k + 0.5) / points;
        std::complex<double> w = std::polar(r, th);
        acc += std::exp(t * (w - 1.0)) / (std::pow(w, static_cast<double>(x - n)) * std::pow(w - 1.0, static_cast<double>(n)));
    }
    return (acc / static_cast<double>(points)).real();
}

} // namespace kpz
