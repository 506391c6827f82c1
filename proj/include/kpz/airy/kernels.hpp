#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "kpz/airy/airy.hpp"
#include "kpz/airy/fredholm.hpp"
#include "kpz/airy/quadrature.hpp"
#include "kpz/core/error.hpp"

namespace kpz {

struct AirySettings {
    int nodes = 40;
    double scale = 4.0;
    double tol = 1e-9;
    int max_doublings = 2;
};

inline Eigen::MatrixXd airy_kernel_matrix(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    Eigen::VectorXd ax(x.size()), apx(x.size()), ay(y.size()), apy(y.size());
    for (long i = 0; i < x.size(); ++i) {
        ax(i) = airy_ai(x(i));
        apx(i) = airy_ai_prime(x(i));
    }
    for (long j = 0; j < y.size(); ++j) {
        ay(j) = airy_ai(y(j));
        apy(j) = airy_ai_prime(y(j));
    }
    Eigen::MatrixXd K(x.size(), y.size());
    for (long i = 0; i < x.size(); ++i)
        for (long j = 0; j < y.size(); ++j)
            K(i, j) = x(i) == y(j) ? apx(i) * apx(i) - x(i) * ax(i) * ax(i)
                                   : (ax(i) * apy(j) - apx(i) * ay(j)) / (x(i) - y(j));
    return K;
}

// [Ai(y_i + l_k)]
inline Eigen::MatrixXd airy_shift_matrix(const Eigen::VectorXd& y, const Rule& lam) {
    Eigen::MatrixXd A(y.size(), static_cast<long>(lam.size()));
    for (long i = 0; i < y.size(); ++i)
        for (std::size_t k = 0; k < lam.size(); ++k) A(i, static_cast<long>(k)) = airy_ai(y(i) + lam.x[k]);
    return A;
}

// Airy heat kernel e^{-d H}(x,y), H = -d^2/dx^2 + x, d > 0.
inline double airy_heat_kernel(double d, double x, double y) {
    double e = -(x - y) * (x - y) / (4.0 * d) - d * (x + y) / 2.0 + d * d * d / 12.0;
    return std::exp(e) / std::sqrt(4.0 * std::numbers::pi * d);
}

// lambda rules for the spectral integrals of the extended Airy2 kernel
inline Rule airy_lambda_positive(double ymin, double d) {
    double top = std::max(0.0, -ymin) + 16.0 + 2.0 * std::max(d, 0.0);
    int panels = static_cast<int>(std::ceil(top / 0.5));
    return composite_gauss_legendre(0.0, top, panels, 8);
}

inline Rule airy_lambda_negative(double d) {
    double bottom = 36.0 / d;
    int panels = static_cast<int>(std::ceil(bottom / 0.5));
    return composite_gauss_legendre(-bottom, 0.0, panels, 8);
}

// Representation switch for the tau' > tau block: heat kernel plus the
// positive integral up to this gap, negative integral beyond it.
inline constexpr double airy2_heat_form_max_gap = 2.0;

// Extended Airy2 kernel block between times ta (rows) and tb (columns),
// d = tb - ta:
//   d <= 0 : int_0^inf e^{d l} Ai(x+l) Ai(y+l) dl   (closed form at d = 0)
//   d > 0  : -int_{-inf}^0 e^{d l} Ai(x+l) Ai(y+l) dl
//          = -e^{-dH}(x,y) + int_0^inf e^{d l} Ai(x+l) Ai(y+l) dl
inline Eigen::MatrixXd airy2_block(double ta, double tb, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const double d = tb - ta;
    if (d == 0.0) return airy_kernel_matrix(x, y);
    const double ymin = std::min(x.minCoeff(), y.minCoeff());
    if (d > airy2_heat_form_max_gap) {
        Rule lam = airy_lambda_negative(d);
        Eigen::VectorXd w(static_cast<long>(lam.size()));
        for (std::size_t k = 0; k < lam.size(); ++k) w(static_cast<long>(k)) = lam.w[k] * std::exp(d * lam.x[k]);
        return -(airy_shift_matrix(x, lam) * w.asDiagonal() * airy_shift_matrix(y, lam).transpose());
    }
    Rule lam = airy_lambda_positive(ymin, d);
    Eigen::VectorXd w(static_cast<long>(lam.size()));
    for (std::size_t k = 0; k < lam.size(); ++k) w(static_cast<long>(k)) = lam.w[k] * std::exp(d * lam.x[k]);
    Eigen::MatrixXd K = airy_shift_matrix(x, lam) * w.asDiagonal() * airy_shift_matrix(y, lam).transpose();
    if (d > 0.0)
        for (long i = 0; i < x.size(); ++i)
            for (long j = 0; j < y.size(); ++j) K(i, j) -= airy_heat_kernel(d, x(i), y(j));
    return K;
}

// Ai(x+y+d^2) exp(d(x+y) + 2d^3/3), evaluated in log space where Ai underflows
inline double airy1_shifted(double d, double x, double y) {
    double z = x + y + d * d;
    double e = d * (x + y) + 2.0 * d * d * d / 3.0;
    if (z >= 20.0) return std::exp(e + log_airy_ai(z));
    return airy_ai(z) * std::exp(e);
}

// Extended Airy1 kernel block, d = tb - ta:
//   -(4 pi d)^{-1/2} exp(-(x-y)^2 / 4d) 1(d > 0) + Ai(x+y+d^2) exp(d(x+y) + 2d^3/3)
inline Eigen::MatrixXd airy1_block(double ta, double tb, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const double d = tb - ta;
    Eigen::MatrixXd K(x.size(), y.size());
    for (long i = 0; i < x.size(); ++i)
        for (long j = 0; j < y.size(); ++j) {
            double v = d == 0.0 ? airy_ai(x(i) + y(j)) : airy1_shifted(d, x(i), y(j));
            if (d > 0.0) v -= std::exp(-(x(i) - y(j)) * (x(i) - y(j)) / (4.0 * d)) / std::sqrt(4.0 * std::numbers::pi * d);
            K(i, j) = v;
        }
    return K;
}

namespace detail {

// sorts nothing: times must already be nondecreasing; equal times are merged
// into one slice with the smaller cut.
inline void merge_times(std::vector<double>& taus, std::vector<double>& cuts) {
    if (taus.size() != cuts.size() || taus.empty()) throw InvalidParameter("need matching nonempty times and cuts");
    for (std::size_t k = 1; k < taus.size(); ++k)
        if (taus[k] < taus[k - 1]) throw InvalidParameter("times must be sorted");
    std::vector<double> t2, c2;
    for (std::size_t k = 0; k < taus.size(); ++k) {
        if (!t2.empty() && taus[k] == t2.back()) c2.back() = std::min(c2.back(), cuts[k]);
        else {
            t2.push_back(taus[k]);
            c2.push_back(cuts[k]);
        }
    }
    taus = t2;
    cuts = c2;
}

inline double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

} // namespace detail

inline KernelOperator airy2_operator(std::vector<double> taus, std::vector<double> cuts, const AirySettings& st = {}) {
    detail::merge_times(taus, cuts);
    KernelOperator op;
    op.cuts = cuts;
    op.nodes = st.nodes;
    op.scale = st.scale;
    op.block = [taus](std::size_t a, std::size_t b, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
        return airy2_block(taus[a], taus[b], x, y);
    };
    return op;
}

inline KernelOperator airy1_operator(std::vector<double> taus, std::vector<double> cuts, const AirySettings& st = {}) {
    detail::merge_times(taus, cuts);
    KernelOperator op;
    op.cuts = cuts;
    op.nodes = st.nodes;
    op.scale = st.scale;
    op.block = [taus](std::size_t a, std::size_t b, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
        return airy1_block(taus[a], taus[b], x, y);
    };
    return op;
}

inline FredholmResult airy2_joint_cdf_result(const std::vector<double>& taus, const std::vector<double>& cuts,
                                             const AirySettings& st = {}) {
    return fredholm_det(airy2_operator(taus, cuts, st), st.tol, st.max_doublings);
}

inline FredholmResult airy1_joint_cdf_result(const std::vector<double>& taus, const std::vector<double>& cuts,
                                             const AirySettings& st = {}) {
    return fredholm_det(airy1_operator(taus, cuts, st), st.tol, st.max_doublings);
}

// P(A2(t_1) <= s_1, ..., A2(t_m) <= s_m)
inline double airy2_joint_cdf(const std::vector<double>& taus, const std::vector<double>& cuts, const AirySettings& st = {}) {
    return detail::clamp01(airy2_joint_cdf_result(taus, cuts, st).value);
}

// P(A1(t_1) <= s_1, ..., A1(t_m) <= s_m)
inline double airy1_joint_cdf(const std::vector<double>& taus, const std::vector<double>& cuts, const AirySettings& st = {}) {
    return detail::clamp01(airy1_joint_cdf_result(taus, cuts, st).value);
}

// F2(s) = det(1 - chi_s K_Ai chi_s)
inline FredholmResult tw2_cdf_result(double s, const AirySettings& st = {}) { return airy2_joint_cdf_result({0.0}, {s}, st); }
inline double tw2_cdf(double s, const AirySettings& st = {}) { return detail::clamp01(tw2_cdf_result(s, st).value); }

// P(A1(0) <= u) = det(1 - chi_u B chi_u), B(x,y) = Ai(x+y); equals F1(2u).
inline double airy1_marginal_cdf(double u, const AirySettings& st = {}) { return airy1_joint_cdf({0.0}, {u}, st); }

// GOE Tracy-Widom F1(s) = P(A1 <= s/2).
inline double tw1_cdf(double s, const AirySettings& st = {}) { return airy1_marginal_cdf(s / 2.0, st); }

// xi1 = 2^{1/3} A1(0): P(xi1 <= s) = det(1 - B) on [2^{-1/3} s, inf) = F1(2^{2/3} s).
inline double xi1_cdf(double s, const AirySettings& st = {}) { return airy1_marginal_cdf(std::pow(2.0, -1.0 / 3.0) * s, st); }

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

// Mean and variance from a CDF: E X = int_0 (1-F) - int^0 F,
// E X^2 = int_0 2s(1-F) + int^0 2|s| F.
template <class Cdf>
Moments cdf_moments(Cdf F, double lo, double hi, int panels_per_unit = 2, int per_panel = 12) {
    double m1 = 0.0, m2 = 0.0;
    auto add = [&](double a, double b) {
        if (b <= a) return;
        int panels = std::max(1, static_cast<int>(std::ceil((b - a) * panels_per_unit)));
        Rule r = composite_gauss_legendre(a, b, panels, per_panel);
        for (std::size_t k = 0; k < r.size(); ++k) {
            double s = r.x[k], f = F(s);
            double tail = s >= 0 ? (1.0 - f) : -f;
            m1 += r.w[k] * tail;
            m2 += r.w[k] * 2.0 * s * tail;
        }
    };
    // F taken as 0 below lo and 1 above hi
    add(lo, std::min(hi, 0.0));
    add(std::max(lo, 0.0), hi);
    return {m1, m2 - m1 * m1};
}

} // namespace kpz
