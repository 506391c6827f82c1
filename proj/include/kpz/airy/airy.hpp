#pragma once

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/airy.hpp>

namespace kpz {

inline double airy_ai(double x) {
    if (x > 100.0) return 0.0;
    return boost::math::airy_ai(x);
}

inline double airy_ai_prime(double x) {
    if (x > 100.0) return 0.0;
    return boost::math::airy_ai_prime(x);
}

// log Ai(x) for x >= 0, accurate also where Ai underflows
inline double log_airy_ai(double x) {
    if (x < 20.0) return std::log(airy_ai(x));
    double z = 2.0 / 3.0 * x * std::sqrt(x);
    // leading terms of the asymptotic series in 1/z
    double corr = 1.0 - 5.0 / (72.0 * z) + 385.0 / (10368.0 * z * z) - 85085.0 / (2239488.0 * z * z * z);
    return -z - 0.25 * std::log(x) - 0.5 * std::log(4.0 * std::numbers::pi) + std::log(corr);
}

// Airy kernel int_0^inf Ai(x+l) Ai(y+l) dl in closed form.
inline double airy_kernel(double x, double y) {
    if (x == y) {
        double a = airy_ai(x), ap = airy_ai_prime(x);
        return ap * ap - x * a * a;
    }
    return (airy_ai(x) * airy_ai_prime(y) - airy_ai_prime(x) * airy_ai(y)) / (x - y);
}

} // namespace kpz
