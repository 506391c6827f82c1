#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "kpz/core/error.hpp"

namespace kpz {

struct SampleSet {
    std::string label;
    std::map<std::string, std::string> params;
    std::vector<double> values;  // ascending

    std::size_t count() const { return values.size(); }
    bool sorted() const { return std::is_sorted(values.begin(), values.end()); }
};

inline SampleSet make_sample_set(std::string label, std::vector<double> v, std::map<std::string, std::string> params = {}) {
    std::sort(v.begin(), v.end());
    return {std::move(label), std::move(params), std::move(v)};
}

// Right-continuous empirical CDF.
class Ecdf {
public:
    explicit Ecdf(std::vector<double> v) : v_(std::move(v)) {
        if (v_.empty()) throw InvalidInput("empirical CDF of an empty sample");
        std::sort(v_.begin(), v_.end());
    }
    double operator()(double x) const {
        return static_cast<double>(std::upper_bound(v_.begin(), v_.end(), x) - v_.begin()) / static_cast<double>(v_.size());
    }
    // P(X < x)
    double left(double x) const {
        return static_cast<double>(std::lower_bound(v_.begin(), v_.end(), x) - v_.begin()) / static_cast<double>(v_.size());
    }
    const std::vector<double>& values() const { return v_; }

private:
    std::vector<double> v_;
};

inline Ecdf ecdf(const std::vector<double>& v) { return Ecdf(v); }

// sup |F_n - F| for a continuous reference; at each distinct sample value both
// F_n(x-) and F_n(x) are compared with F(x).
inline double ks_distance(const SampleSet& s, const std::function<double(double)>& F) {
    if (s.values.empty()) throw InvalidInput("KS distance of an empty sample");
    const auto& v = s.values;
    const double n = static_cast<double>(v.size());
    double d = 0.0;
    std::size_t i = 0;
    while (i < v.size()) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i]) ++j;
        double f = F(v[i]);
        d = std::max({d, std::fabs(static_cast<double>(j) / n - f), std::fabs(static_cast<double>(i) / n - f)});
        i = j;
    }
    return d;
}

// Integer-valued sample against a lattice CDF G(k) = P(X <= k): both are
// step functions with jumps on the integers, so the supremum is attained on
// [min - 1, max].
inline double ks_distance_lattice(const std::vector<long>& sample, const std::function<double(long)>& G) {
    if (sample.empty()) throw InvalidInput("KS distance of an empty sample");
    std::vector<long> v = sample;
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    double d = 0.0;
    for (long k = v.front() - 1; k <= v.back(); ++k) {
        double fn = static_cast<double>(std::upper_bound(v.begin(), v.end(), k) - v.begin()) / n;
        d = std::max(d, std::fabs(fn - G(k)));
    }
    return d;
}

// Integer sample h against a continuous limit law of (h - center)/scale. The
// unit cell of k is [k - 1/2, k + 1/2), so P(h <= k) is compared with
// F((k + 1/2 - center)/scale).
inline double ks_distance_lattice_continuum(const std::vector<long>& sample, double center, double scale,
                                            const std::function<double(double)>& F) {
    return ks_distance_lattice(sample, [&](long k) { return F((static_cast<double>(k) + 0.5 - center) / scale); });
}

inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw InvalidInput("KS distance of an empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

// Kolmogorov limit law P(sqrt(n) D <= x).
inline double kolmogorov_cdf(double x) {
    if (x <= 0.0) return 0.0;
    if (x < 0.3) {
        // theta-function form, accurate for small x
        const double c = std::sqrt(2.0 * std::numbers::pi) / x;
        double s = 0.0;
        for (int k = 1; k < 50; ++k) s += std::exp(-(2.0 * k - 1) * (2.0 * k - 1) * std::numbers::pi * std::numbers::pi / (8.0 * x * x));
        return c * s;
    }
    double s = 0.0;
    for (int k = 1; k < 200; ++k) {
        double term = std::exp(-2.0 * k * k * x * x);
        s += (k % 2 ? 1.0 : -1.0) * term;
        if (term < 1e-18) break;
    }
    return 1.0 - 2.0 * s;
}

inline double kolmogorov_quantile(double p) {
    double lo = 0.0, hi = 5.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (kolmogorov_cdf(mid) < p) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Tail probability of a two-sided 3-sigma Gaussian event.
inline double three_sigma_level() { return std::erfc(3.0 / std::sqrt(2.0)); }

// KS acceptance thresholds at the 3-sigma level (p = 0.0027) of the
// Kolmogorov limit law: one sample of size n, or two samples.
inline double ks_threshold_3sigma(std::size_t n) {
    return kolmogorov_quantile(1.0 - three_sigma_level()) / std::sqrt(static_cast<double>(n));
}
inline double ks_threshold_3sigma(std::size_t n, std::size_t m) {
    const double a = static_cast<double>(n), b = static_cast<double>(m);
    return kolmogorov_quantile(1.0 - three_sigma_level()) * std::sqrt((a + b) / (a * b));
}

// (h - 2t) / t^{1/3}; both laws share the centring and scaling.
enum class GrowthLaw { curved, flat };
inline SampleSet scale_heights(const std::vector<double>& h, double t, GrowthLaw law = GrowthLaw::curved) {
    if (!(t > 0.0)) throw InvalidParameter("t must be positive");
    std::vector<double> v;
    v.reserve(h.size());
    const double c = std::cbrt(t);
    for (double x : h) v.push_back((x - 2.0 * t) / c);
    return make_sample_set(law == GrowthLaw::curved ? "curved" : "flat", v, {{"t", std::to_string(t)}});
}

struct MeanVar {
    double mean = 0.0;
    double var = 0.0;
    std::size_t n = 0;
    double sem() const { return n > 1 ? std::sqrt(var / static_cast<double>(n)) : 0.0; }
};

inline MeanVar mean_var(const std::vector<double>& v) {
    MeanVar r;
    r.n = v.size();
    if (v.empty()) return r;
    r.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) s += (x - r.mean) * (x - r.mean);
    r.var = v.size() > 1 ? s / static_cast<double>(v.size() - 1) : 0.0;
    return r;
}

inline double covariance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2) throw InvalidInput("covariance needs paired samples");
    double ma = mean_var(a).mean, mb = mean_var(b).mean, s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - ma) * (b[k] - mb);
    return s / static_cast<double>(a.size() - 1);
}

inline double correlation(const std::vector<double>& a, const std::vector<double>& b) {
    return covariance(a, b) / std::sqrt(mean_var(a).var * mean_var(b).var);
}

struct ChiSquare {
    double statistic = 0.0;
    int dof = 0;
    double critical = 0.0;
    bool pass = false;
};

// Pearson test of observed counts against equal expected frequencies.
inline ChiSquare chi_square_uniform(const std::vector<long>& counts, double alpha = 0.01) {
    if (counts.size() < 2) throw InvalidInput("need at least two categories");
    double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    double e = total / static_cast<double>(counts.size());
    ChiSquare r;
    for (long c : counts) r.statistic += (c - e) * (c - e) / e;
    r.dof = static_cast<int>(counts.size()) - 1;
    r.critical = boost::math::quantile(boost::math::complement(boost::math::chi_squared(r.dof), alpha));
    r.pass = r.statistic <= r.critical;
    return r;
}

} // namespace kpz
