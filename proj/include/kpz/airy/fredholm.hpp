#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kpz/airy/quadrature.hpp"
#include "kpz/core/error.hpp"

namespace kpz {

// Block kernel on L^2 of a union of half lines [s_a, inf). block(a, b, ya, yb)
// returns the kernel matrix K_ab(ya_i, yb_j).
struct KernelOperator {
    using Block = std::function<Eigen::MatrixXd(std::size_t, std::size_t, const Eigen::VectorXd&, const Eigen::VectorXd&)>;

    std::vector<double> cuts;
    int nodes = 40;
    double scale = 4.0;  // L in y = s + L(1+u)/(1-u)
    Block block;
};

struct FredholmResult {
    double value = 1.0;
    double error = 0.0;
    int nodes = 0;
};

// det(I - K) with K already weight-symmetrized.
inline double det_one_minus(const Eigen::MatrixXd& K) {
    if (K.rows() == 0) return 1.0;
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(K.rows(), K.cols()) - K;
    return A.partialPivLu().determinant();
}

// Nystrom matrix sqrt(w_i) K(x_i, x_j) sqrt(w_j) at n nodes per slice.
inline Eigen::MatrixXd nystrom_matrix(const KernelOperator& op, int n) {
    const std::size_t m = op.cuts.size();
    std::vector<Eigen::VectorXd> y(m), sw(m);
    for (std::size_t a = 0; a < m; ++a) {
        Rule r = half_line_rule(n, op.cuts[a], op.scale);
        y[a] = Eigen::Map<const Eigen::VectorXd>(r.x.data(), n);
        sw[a] = Eigen::Map<const Eigen::VectorXd>(r.w.data(), n).cwiseSqrt();
    }
    Eigen::MatrixXd K(static_cast<long>(m) * n, static_cast<long>(m) * n);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            K.block(static_cast<long>(a) * n, static_cast<long>(b) * n, n, n) =
                sw[a].asDiagonal() * op.block(a, b, y[a], y[b]) * sw[b].asDiagonal();
    return K;
}

// Value at 2n nodes with |value(2n) - value(n)| as the error estimate;
// doubles further while the estimate exceeds tol.
inline FredholmResult fredholm_det(const KernelOperator& op, double tol = 1e-10, int max_doublings = 3) {
    if (op.cuts.empty()) return {1.0, 0.0, 0};
    if (!op.block) throw InvalidParameter("kernel operator without evaluator");
    int n = op.nodes;
    double v = det_one_minus(nystrom_matrix(op, n));
    for (int k = 0; k < max_doublings; ++k) {
        n *= 2;
        double w = det_one_minus(nystrom_matrix(op, n));
        if (!std::isfinite(w)) throw AccuracyFailure("non-finite determinant");
        double err = std::fabs(w - v);
        if (err <= tol) return {w, err, n};
        v = w;
    }
    throw AccuracyFailure("Fredholm determinant not converged after " + std::to_string(max_doublings) +
                          " doublings (last nodes " + std::to_string(n) + ")");
}

// Single evaluation at a fixed node count, no refinement.
inline double fredholm_det_fixed(const KernelOperator& op, int n) {
    if (op.cuts.empty()) return 1.0;
    return det_one_minus(nystrom_matrix(op, n));
}

} // namespace kpz
