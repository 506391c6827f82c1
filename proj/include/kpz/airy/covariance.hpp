#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "kpz/airy/fredholm.hpp"
#include "kpz/airy/kernels.hpp"
#include "kpz/core/error.hpp"
#include "kpz/core/parallel.hpp"

namespace kpz {

enum class AiryProcess { A1, A2 };

struct CovarianceResult {
    double lag = 0.0;
    double value = 0.0;
    double error = 0.0;
};

struct CovarianceGrid {
    double lo = -6.0;
    double hi = 6.0;
    double step = 0.05;
    int nodes = 40;
    double scale = 4.0;
};

namespace detail {

// Joint CDF F(s_a, s_b) of (X(0), X(t)) on the cut grid s_k = lo + k h.
// Nodes for cut s are s + r_i with fixed offsets r_i, so A1 blocks depend
// only on k_a + k_b and k_a - k_b, and A2 blocks factor through per-cut
// tables of Ai(y + lambda).
class JointTable {
public:
    JointTable(AiryProcess which, double t, const CovarianceGrid& g) : which_(which), t_(t), g_(g) {
        K_ = static_cast<int>(std::lround((g.hi - g.lo) / g.step)) + 1;
        Rule r = half_line_rule(g.nodes, 0.0, g.scale);
        off_ = Eigen::Map<const Eigen::VectorXd>(r.x.data(), g.nodes);
        sw_ = Eigen::Map<const Eigen::VectorXd>(r.w.data(), g.nodes).cwiseSqrt();
        if (which == AiryProcess::A2) build_a2();
        else build_a1();
        marg_.resize(static_cast<std::size_t>(K_));
        for (int k = 0; k < K_; ++k) marg_[static_cast<std::size_t>(k)] = det_one_minus(same_[static_cast<std::size_t>(k)]);
    }

    int size() const { return K_; }
    double cut(int k) const { return g_.lo + k * g_.step; }
    double marginal(int k) const { return marg_[static_cast<std::size_t>(k)]; }

    double joint(int a, int b) const {
        if (t_ == 0.0) return marginal(std::min(a, b));
        const long n = g_.nodes;
        Eigen::MatrixXd M(2 * n, 2 * n);
        M.topLeftCorner(n, n) = same_[static_cast<std::size_t>(a)];
        M.bottomRightCorner(n, n) = same_[static_cast<std::size_t>(b)];
        if (which_ == AiryProcess::A2) {
            const auto& ua = up_[static_cast<std::size_t>(a)];
            const auto& ub = up_[static_cast<std::size_t>(b)];
            const auto& da = down_[static_cast<std::size_t>(a)];
            const auto& db = down_[static_cast<std::size_t>(b)];
            M.topRightCorner(n, n) = ua * ub.transpose();
            if (!heat_form_) M.topRightCorner(n, n) *= -1.0;
            if (heat_form_) {
                Eigen::VectorXd ya = off_.array() + cut(a), yb = off_.array() + cut(b);
                for (long i = 0; i < n; ++i)
                    for (long j = 0; j < n; ++j)
                        M(i, n + j) -= sw_(i) * airy_heat_kernel(t_, ya(i), yb(j)) * sw_(j);
            }
            M.bottomLeftCorner(n, n) = db * da.transpose();
        } else {
            M.topRightCorner(n, n) = fwd_[static_cast<std::size_t>(a + b)] - gauss_[static_cast<std::size_t>(a - b + K_ - 1)];
            M.bottomLeftCorner(n, n) = bwd_[static_cast<std::size_t>(a + b)];
        }
        return det_one_minus(M);
    }

private:
    void build_a2() {
        heat_form_ = t_ <= airy2_heat_form_max_gap;
        Rule pos = airy_lambda_positive(g_.lo, t_);
        Rule fwd = heat_form_ ? pos : airy_lambda_negative(t_);
        same_.resize(static_cast<std::size_t>(K_));
        up_.resize(static_cast<std::size_t>(K_));
        down_.resize(static_cast<std::size_t>(K_));
        const auto swd = sw_.asDiagonal();
        parallel_for(static_cast<std::size_t>(K_), [&](std::size_t k) {
            Eigen::VectorXd y = off_.array() + cut(static_cast<int>(k));
            same_[k] = swd * airy_kernel_matrix(y, y) * swd;
            if (t_ == 0.0) return;
            auto factor = [&](const Rule& r, double d) {
                Eigen::MatrixXd A = airy_shift_matrix(y, r);
                Eigen::VectorXd w(static_cast<long>(r.size()));
                for (std::size_t q = 0; q < r.size(); ++q) w(static_cast<long>(q)) = std::sqrt(r.w[q] * std::exp(d * r.x[q]));
                return Eigen::MatrixXd(swd * A * w.asDiagonal());
            };
            // forward block (time 0 -> t), sign applied in joint()
            up_[k] = factor(fwd, t_);
            // backward block (time t -> 0): int_0^inf e^{-t l} Ai Ai
            down_[k] = factor(pos, -t_);
        });
    }

    void build_a1() {
        const long n = g_.nodes;
        const int S = 2 * K_ - 1;
        same_.resize(static_cast<std::size_t>(K_));
        fwd_.resize(static_cast<std::size_t>(S));
        bwd_.resize(static_cast<std::size_t>(S));
        gauss_.resize(static_cast<std::size_t>(S));
        const auto swd = sw_.asDiagonal();
        std::vector<Eigen::MatrixXd> sum0(static_cast<std::size_t>(S));
        parallel_for(static_cast<std::size_t>(S), [&](std::size_t q) {
            // index sum q = a + b, cut sum 2 lo + q h
            double cs = 2.0 * g_.lo + static_cast<double>(q) * g_.step;
            Eigen::MatrixXd F(n, n), B(n, n), Z(n, n);
            for (long i = 0; i < n; ++i)
                for (long j = 0; j < n; ++j) {
                    double x = off_(i) + off_(j) + cs;  // (y_a + y_b)
                    Z(i, j) = airy_ai(x);
                    if (t_ != 0.0) {
                        F(i, j) = airy1_shifted(t_, 0.5 * x, 0.5 * x);
                        B(i, j) = airy1_shifted(-t_, 0.5 * x, 0.5 * x);
                    }
                }
            sum0[q] = swd * Z * swd;
            if (t_ != 0.0) {
                fwd_[q] = swd * F * swd;
                bwd_[q] = swd * B * swd;
            }
            // index difference a - b = q - (K - 1)
            double cd = (static_cast<double>(q) - (K_ - 1)) * g_.step;
            Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
            if (t_ > 0.0)
                for (long i = 0; i < n; ++i)
                    for (long j = 0; j < n; ++j) {
                        double dx = off_(i) - off_(j) + cd;
                        G(i, j) = std::exp(-dx * dx / (4.0 * t_)) / std::sqrt(4.0 * std::numbers::pi * t_);
                    }
            gauss_[q] = swd * G * swd;
        });
        for (int k = 0; k < K_; ++k) same_[static_cast<std::size_t>(k)] = sum0[static_cast<std::size_t>(2 * k)];
    }

    AiryProcess which_;
    double t_;
    CovarianceGrid g_;
    int K_ = 0;
    bool heat_form_ = false;
    Eigen::VectorXd off_, sw_;
    std::vector<double> marg_;
    std::vector<Eigen::MatrixXd> same_, up_, down_, fwd_, bwd_, gauss_;
};

} // namespace detail

// Cov(X(0), X(t)) = int int [F(s1, s2) - F(s1) F(s2)] ds1 ds2 (Hoeffding) by the
// trapezoid rule on the cut grid; error from comparison with the doubled step.
inline CovarianceResult airy_covariance(AiryProcess which, double t, const CovarianceGrid& g = {}) {
    if (!(t >= 0.0)) throw InvalidParameter("lag must be nonnegative");
    detail::JointTable tab(which, t, g);
    const int K = tab.size();
    // reversibility: F(s1, s2; t) = F(s2, s1; t), fill the upper triangle only
    std::vector<double> D(static_cast<std::size_t>(K) * K);
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < K; ++a)
        for (int b = a; b < K; ++b) pairs.emplace_back(a, b);
    parallel_for(pairs.size(), [&](std::size_t p) {
        auto [a, b] = pairs[p];
        double v = tab.joint(a, b) - tab.marginal(a) * tab.marginal(b);
        D[static_cast<std::size_t>(a) * K + b] = v;
        D[static_cast<std::size_t>(b) * K + a] = v;
    });
    auto trap = [&](int stride) {
        double h = g.step * stride, s = 0.0;
        for (int a = 0; a < K; a += stride)
            for (int b = 0; b < K; b += stride) {
                double w = (a == 0 || a == K - 1 ? 0.5 : 1.0) * (b == 0 || b == K - 1 ? 0.5 : 1.0);
                s += w * D[static_cast<std::size_t>(a) * K + b];
            }
        return s * h * h;
    };
    double fine = trap(1);
    double err = (K - 1) % 2 == 0 ? std::fabs(fine - trap(2)) : 0.0;
    // tail mass outside the box: the integrand carries the tails of F and 1 - F
    double tail = (tab.marginal(0) + 1.0 - tab.marginal(K - 1)) * (g.hi - g.lo) * 2.0;
    return {t, fine, err + tail};
}

// Var of the one-point law from its CDF on [lo, hi]
inline Moments airy_marginal_moments(AiryProcess which, double lo = -10.0, double hi = 6.0, const AirySettings& st = {}) {
    if (which == AiryProcess::A2) return cdf_moments([&](double s) { return tw2_cdf(s, st); }, lo, hi);
    return cdf_moments([&](double s) { return airy1_marginal_cdf(s, st); }, lo, hi);
}

} // namespace kpz
