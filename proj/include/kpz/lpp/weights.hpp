#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "kpz/core/error.hpp"
#include "kpz/core/random.hpp"

namespace kpz {

enum class Law { geometric, geometric_plus_one, exponential };

struct WeightLaw {
    Law law = Law::exponential;
    double q = 0.0;

    static WeightLaw geometric(double q) { return {Law::geometric, q}; }
    static WeightLaw geometric_plus_one(double q) { return {Law::geometric_plus_one, q}; }
    static WeightLaw exponential() { return {Law::exponential, 0.0}; }
};

// Weights on the rectangle [i0, i0+rows) x [j0, j0+cols). Sites that were
// never drawn (outside a half-plane) hold NaN.
struct WeightGrid {
    long i0 = 1, j0 = 1;
    long rows = 0, cols = 0;
    std::vector<double> w;
    WeightLaw law;

    bool contains(long i, long j) const { return i >= i0 && i < i0 + rows && j >= j0 && j < j0 + cols; }
    double& at(long i, long j) { return w[static_cast<std::size_t>((i - i0) * cols + (j - j0))]; }
    double operator()(long i, long j) const {
        if (!contains(i, j)) throw OutOfWindow("weight outside grid");
        return w[static_cast<std::size_t>((i - i0) * cols + (j - j0))];
    }
};

inline double sample_weight(const WeightLaw& law, Rng& rng) {
    switch (law.law) {
    case Law::geometric: return static_cast<double>(rng.geometric(law.q));
    case Law::geometric_plus_one: return static_cast<double>(rng.geometric(law.q)) + 1.0;
    case Law::exponential: return rng.exponential(1.0);
    }
    return 0.0;
}

inline void check_law(const WeightLaw& law) {
    if (law.law != Law::exponential && !(law.q >= 0.0 && law.q < 1.0))
        throw InvalidParameter("geometric parameter must lie in [0,1)");
}

// i.i.d. field on [1,n] x [1,m], drawn row by row.
inline WeightGrid sample_weights(const WeightLaw& law, long n, long m, Rng& rng) {
    check_law(law);
    if (n < 0 || m < 0) throw InvalidParameter("negative grid size");
    WeightGrid g;
    g.rows = n;
    g.cols = m;
    g.law = law;
    g.w.resize(static_cast<std::size_t>(n * m));
    for (auto& v : g.w) v = sample_weight(law, rng);
    return g;
}

// Field on {i+j >= 2} restricted to the backward cone of (n,m):
// i in [2-m, n], j in [2-n, m]. Drawn row by row, skipping i+j < 2.
inline WeightGrid sample_weights_half_plane(const WeightLaw& law, long n, long m, Rng& rng) {
    check_law(law);
    if (n < 1 || m < 1) throw InvalidParameter("endpoint must satisfy n,m >= 1");
    WeightGrid g;
    g.i0 = 2 - m;
    g.j0 = 2 - n;
    g.rows = n - g.i0 + 1;
    g.cols = m - g.j0 + 1;
    g.law = law;
    g.w.assign(static_cast<std::size_t>(g.rows * g.cols), std::numeric_limits<double>::quiet_NaN());
    for (long i = g.i0; i < g.i0 + g.rows; ++i)
        for (long j = g.j0; j < g.j0 + g.cols; ++j)
            if (i + j >= 2) g.at(i, j) = sample_weight(law, rng);
    return g;
}

} // namespace kpz
