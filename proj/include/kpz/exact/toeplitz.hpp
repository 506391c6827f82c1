#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <Eigen/Dense>

#include "kpz/core/error.hpp"
#include "kpz/exact/bessel.hpp"

namespace kpz {

struct ToeplitzSpec {
    long n = 0;
    double t = 0.0;
    Eigen::MatrixXd entries;  // e^{-2t} I_{j-k}(2t)
};

inline ToeplitzSpec toeplitz_spec(long n, double t) {
    if (n < 0) throw InvalidParameter("n must be nonnegative");
    ToeplitzSpec s;
    s.n = n;
    s.t = t;
    auto b = bessel_i_scaled(2.0 * t, n);
    s.entries.resize(n, n);
    for (long j = 0; j < n; ++j)
        for (long k = 0; k < n; ++k) s.entries(j, k) = b[static_cast<std::size_t>(std::labs(j - k))];
    return s;
}

namespace detail {

// e^{-x} I_k(x), k = 0..kmax, by Miller's recurrence in the working type.
template <class Real>
std::vector<Real> bessel_i_scaled_t(double x, long kmax) {
    long start = std::max(kmax, static_cast<long>(x)) + static_cast<long>(12.0 * std::sqrt(x + 1.0)) + 60;
    std::vector<Real> v(static_cast<std::size_t>(start + 2), Real(0));
    v[static_cast<std::size_t>(start)] = Real(1);
    const Real rx = Real(x);
    for (long k = start; k >= 1; --k)
        v[static_cast<std::size_t>(k - 1)] = (Real(2 * k) / rx) * v[static_cast<std::size_t>(k)] + v[static_cast<std::size_t>(k + 1)];
    Real sum = v[0];
    for (long k = 1; k <= start; ++k) sum += 2 * v[static_cast<std::size_t>(k)];
    std::vector<Real> out(static_cast<std::size_t>(kmax + 1));
    for (long k = 0; k <= kmax; ++k) out[static_cast<std::size_t>(k)] = v[static_cast<std::size_t>(k)] / sum;
    return out;
}

// e^{-t^2} det[I_{j-k}(2t)] with every step in the working type.
template <class Real>
double toeplitz_cdf_t(long n, double t) {
    using std::abs;
    using std::exp;
    using std::log;
    auto b = bessel_i_scaled_t<Real>(2.0 * t, n);
    std::vector<Real> a(static_cast<std::size_t>(n * n));
    auto A = [&](long i, long j) -> Real& { return a[static_cast<std::size_t>(i * n + j)]; };
    for (long j = 0; j < n; ++j)
        for (long k = 0; k < n; ++k) A(j, k) = b[static_cast<std::size_t>(std::labs(j - k))];
    int sign = 1;
    Real logdet = 0;
    for (long c = 0; c < n; ++c) {
        long p = c;
        for (long r = c + 1; r < n; ++r)
            if (abs(A(r, c)) > abs(A(p, c))) p = r;
        if (A(p, c) == 0) return 0.0;
        if (p != c) {
            for (long k = 0; k < n; ++k) std::swap(A(p, k), A(c, k));
            sign = -sign;
        }
        Real piv = A(c, c);
        if (piv < 0) sign = -sign;
        logdet += log(abs(piv));
        for (long r = c + 1; r < n; ++r) {
            Real f = A(r, c) / piv;
            if (f == 0) continue;
            for (long k = c + 1; k < n; ++k) A(r, k) -= f * A(c, k);
        }
    }
    // a negative sign only arises from rounding on a vanishing determinant
    if (sign < 0) return 0.0;
    Real v = exp(logdet + Real(2.0 * t * static_cast<double>(n) - t * t));
    return static_cast<double>(v);
}

template <unsigned Digits>
using MpFloat = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<Digits>>;

} // namespace detail

// Decimal digits cancelled in e^{-t^2} det[I_{j-k}(2t)]: the scaled matrix
// has O(1) entries while its determinant is about e^{-2tn} times the answer.
inline double toeplitz_digits_lost(long n, double t) { return 2.0 * t * static_cast<double>(n) / std::numbers::ln10; }

// P(h(0,t) <= n) for the PNG droplet, i.e. P(L <= n) for the Poissonized
// longest increasing subsequence with mean t^2 points:
// e^{-t^2} det[I_{j-k}(2t)]_{n x n}. The working precision is chosen from
// the cancellation estimate so that about 15 digits survive.
inline double png_cdf_toeplitz(long n, double t) {
    if (n < 0) throw InvalidParameter("n must be nonnegative");
    if (!(t > 0.0)) throw InvalidParameter("t must be positive");
    if (n == 0) return std::exp(-t * t);
    const double need = toeplitz_digits_lost(n, t) + 20.0;
    double v;
    if (need <= 18) v = detail::toeplitz_cdf_t<long double>(n, t);
    else if (need <= 50) v = detail::toeplitz_cdf_t<detail::MpFloat<50>>(n, t);
    else if (need <= 100) v = detail::toeplitz_cdf_t<detail::MpFloat<100>>(n, t);
    else if (need <= 250) v = detail::toeplitz_cdf_t<detail::MpFloat<250>>(n, t);
    else if (need <= 500) v = detail::toeplitz_cdf_t<detail::MpFloat<500>>(n, t);
    else if (need <= 1000) v = detail::toeplitz_cdf_t<detail::MpFloat<1000>>(n, t);
    else throw AccuracyFailure("Toeplitz determinant too ill-conditioned; use the discrete Fredholm form");
    return std::min(1.0, std::max(0.0, v));
}

} // namespace kpz
