#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "kpz/core/error.hpp"
#include "kpz/core/random.hpp"

namespace kpz {

enum class Boundary { frozen, periodic };

// Half-open lattice window [lo, hi).
struct Window {
    long lo = 0;
    long hi = 0;
    long size() const { return hi - lo; }
};

// TASEP height profile on a finite window. A particle sits at x when
// h(x+1) - h(x) = -1. With a frozen boundary the two end sites never move;
// a periodic window is a ring whose closing increment h(lo) - h(hi-1) is
// also +-1.
struct HeightFunction {
    long origin = 0;
    std::vector<long> h;
    double time = 0.0;
    Boundary boundary = Boundary::frozen;

    std::size_t size() const { return h.size(); }
    long at(long x) const {
        long k = x - origin;
        if (k < 0 || k >= static_cast<long>(h.size())) throw OutOfWindow("site outside height window");
        return h[static_cast<std::size_t>(k)];
    }

    bool admissible() const {
        for (std::size_t k = 1; k < h.size(); ++k)
            if (std::labs(h[k] - h[k - 1]) != 1) return false;
        if (boundary == Boundary::periodic && h.size() > 1)
            if (std::labs(h.front() - h.back()) != 1) return false;
        return true;
    }

    // site index k (0-based) is a local minimum that may be raised
    bool is_local_min(std::size_t k) const {
        std::size_t n = h.size();
        if (boundary == Boundary::frozen) {
            if (k == 0 || k + 1 >= n) return false;
            return h[k - 1] == h[k] + 1 && h[k + 1] == h[k] + 1;
        }
        if (n < 2) return false;
        long l = h[(k + n - 1) % n], r = h[(k + 1) % n];
        return l == h[k] + 1 && r == h[k] + 1;
    }

    // particle positions in decreasing order (rightmost first)
    std::vector<long> particles() const {
        std::vector<long> out;
        for (std::size_t k = h.size(); k-- > 1;)
            if (h[k] - h[k - 1] == -1) out.push_back(origin + static_cast<long>(k) - 1);
        return out;
    }
};

struct InitialCondition {
    enum Kind { flat, bernoulli, wedge } kind = flat;
    double m = 0.0;  // slope for bernoulli

    static InitialCondition make_flat() { return {flat, 0.0}; }
    static InitialCondition make_wedge() { return {wedge, 0.0}; }
    static InitialCondition make_bernoulli(double m) { return {bernoulli, m}; }
};

// flat: h(x) = x mod 2; wedge: h(x) = |x|; bernoulli(m): h(lo) = 0 and
// i.i.d. increments, +1 with probability (1+m)/2.
inline HeightFunction make_initial(const InitialCondition& ic, Window w, Rng& rng,
                                   Boundary b = Boundary::frozen) {
    if (w.size() <= 0) throw InvalidParameter("empty window");
    if (ic.kind == InitialCondition::bernoulli && (ic.m < -1.0 || ic.m > 1.0))
        throw InvalidParameter("slope must lie in [-1,1]");
    HeightFunction f;
    f.origin = w.lo;
    f.boundary = b;
    f.h.resize(static_cast<std::size_t>(w.size()));
    for (long x = w.lo; x < w.hi; ++x) {
        std::size_t k = static_cast<std::size_t>(x - w.lo);
        switch (ic.kind) {
        case InitialCondition::flat: f.h[k] = ((x % 2) + 2) % 2; break;
        case InitialCondition::wedge: f.h[k] = std::labs(x); break;
        case InitialCondition::bernoulli:
            if (k == 0) f.h[k] = 0;
            else f.h[k] = f.h[k - 1] + (rng.bernoulli((1.0 + ic.m) / 2.0) ? 1 : -1);
            break;
        }
    }
    if (b == Boundary::periodic && !f.admissible())
        throw InvalidParameter("profile does not close on a periodic window");
    return f;
}

} // namespace kpz
