#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

#include "kpz/core/error.hpp"

namespace kpz {

struct Rule {
    std::vector<double> x;
    std::vector<double> w;
    std::size_t size() const { return x.size(); }
};

// Gauss-Legendre on [-1,1] by Newton iteration on P_n.
inline Rule gauss_legendre(int n) {
    if (n < 1) throw InvalidParameter("need at least one node");
    static std::map<int, Rule> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    Rule r;
    r.x.resize(static_cast<std::size_t>(n));
    r.w.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < (n + 1) / 2; ++k) {
        double z = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = z;
                p0 = 1.0;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            double dz = p1 / dp;
            z -= dz;
            if (std::fabs(dz) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0, p1 = z;
        for (int j = 2; j <= n; ++j) {
            double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        dp = n == 1 ? 1.0 : n * (z * p1 - p0) / (z * z - 1.0);
        double w = 2.0 / ((1.0 - z * z) * dp * dp);
        r.x[static_cast<std::size_t>(k)] = -z;
        r.x[static_cast<std::size_t>(n - 1 - k)] = z;
        r.w[static_cast<std::size_t>(k)] = w;
        r.w[static_cast<std::size_t>(n - 1 - k)] = w;
    }
    if (n == 1) {
        r.x = {0.0};
        r.w = {2.0};
    }
    std::lock_guard<std::mutex> lk(mu);
    cache[n] = r;
    return r;
}

inline Rule gauss_legendre(int n, double a, double b) {
    Rule r = gauss_legendre(n);
    for (std::size_t k = 0; k < r.size(); ++k) {
        r.x[k] = a + (b - a) * (r.x[k] + 1.0) / 2.0;
        r.w[k] *= (b - a) / 2.0;
    }
    return r;
}

inline Rule composite_gauss_legendre(double a, double b, int panels, int per_panel) {
    Rule out;
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        Rule r = gauss_legendre(per_panel, a + p * h, a + (p + 1) * h);
        out.x.insert(out.x.end(), r.x.begin(), r.x.end());
        out.w.insert(out.w.end(), r.w.begin(), r.w.end());
    }
    return out;
}

// [s, inf) via y = s + L (1+u)/(1-u).
inline Rule half_line_rule(int n, double s, double L) {
    Rule r = gauss_legendre(n);
    for (std::size_t k = 0; k < r.size(); ++k) {
        double u = r.x[k];
        r.x[k] = s + L * (1.0 + u) / (1.0 - u);
        r.w[k] *= 2.0 * L / ((1.0 - u) * (1.0 - u));
    }
    return r;
}

} // namespace kpz
