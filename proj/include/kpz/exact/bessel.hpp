#pragma once

#include <cmath>
#include <vector>

#include "kpz/core/error.hpp"

namespace kpz {

// e^{-x} I_k(x) for k = 0..kmax, x >= 0, by Miller's backward recurrence
// I_{k-1} = (2k/x) I_k + I_{k+1}, normalized with I_0 + 2 sum_{k>=1} I_k = e^x.
inline std::vector<double> bessel_i_scaled(double x, long kmax) {
    if (x < 0 || kmax < 0) throw InvalidParameter("bessel_i_scaled needs x >= 0, kmax >= 0");
    std::vector<double> out(static_cast<std::size_t>(kmax + 1), 0.0);
    if (x == 0.0) {
        out[0] = 1.0;
        return out;
    }
    long start = std::max(kmax, static_cast<long>(x)) + static_cast<long>(12.0 * std::sqrt(x + 1.0)) + 40;
    std::vector<double> v(static_cast<std::size_t>(start + 2), 0.0);
    v[static_cast<std::size_t>(start + 1)] = 0.0;
    v[static_cast<std::size_t>(start)] = 1e-300;
    for (long k = start; k >= 1; --k) {
        v[static_cast<std::size_t>(k - 1)] = (2.0 * k / x) * v[static_cast<std::size_t>(k)] + v[static_cast<std::size_t>(k + 1)];
        if (v[static_cast<std::size_t>(k - 1)] > 1e250) {
            for (long r = k - 1; r <= start; ++r) v[static_cast<std::size_t>(r)] *= 1e-250;
        }
    }
    double sum = v[0];
    for (long k = 1; k <= start; ++k) sum += 2.0 * v[static_cast<std::size_t>(k)];
    for (long k = 0; k <= kmax; ++k) out[static_cast<std::size_t>(k)] = v[static_cast<std::size_t>(k)] / sum;
    return out;
}

} // namespace kpz
