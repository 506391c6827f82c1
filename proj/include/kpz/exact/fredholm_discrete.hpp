#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "kpz/core/error.hpp"

namespace kpz {

// (Bf)(x) = -f(x+1) - f(x-1) + (x/t) f(x) on x in [-M, M].
struct DiscreteOperator {
    double t = 1.0;
    long M = 0;
    Eigen::VectorXd diag;
    Eigen::VectorXd off;

    DiscreteOperator(double t_, long M_) : t(t_), M(M_) {
        if (!(t > 0.0) || M < 1) throw InvalidParameter("discrete operator needs t > 0 and M >= 1");
        diag.resize(2 * M + 1);
        off.setConstant(2 * M, -1.0);
        for (long x = -M; x <= M; ++x) diag(x + M) = static_cast<double>(x) / t;
    }
};

// Spectral projection of B onto eigenvalues <= 0 on the finite section.
// Eigenvalues that vanish up to rounding are counted as zero and kept.
class DiscreteProjection {
public:
    DiscreteProjection(double t, long M) : op_(t, M) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(op_.diag, op_.off, Eigen::ComputeEigenvectors);
        const auto& lam = es.eigenvalues();
        const double zero_tol = 1e-9 * std::max(1.0, lam.cwiseAbs().maxCoeff());
        long k = 0;
        while (k < lam.size() && lam(k) <= zero_tol) ++k;
        const Eigen::MatrixXd& V = es.eigenvectors();
        // only rows x > -1 are ever read (x > n >= 0)
        rows_ = M + 1;
        Eigen::MatrixXd Vn = V.bottomLeftCorner(rows_, k);
        P_ = Vn * Vn.transpose();
    }

    long M() const { return op_.M; }
    double t() const { return op_.t; }

    // det(1 - theta_n P theta_n), theta_n the indicator of x > n
    double cdf(long n) const {
        if (n < 0) throw InvalidParameter("n must be nonnegative");
        long first = n + 1;  // site x = first is row index first of the kept block
        long size = op_.M - n;
        if (size <= 0) return 1.0;
        Eigen::MatrixXd A = Eigen::MatrixXd::Identity(size, size) - P_.block(first, first, size, size);
        return A.partialPivLu().determinant();
    }

private:
    DiscreteOperator op_;
    long rows_ = 0;
    Eigen::MatrixXd P_;
};

inline long default_truncation(long n, double t) { return n + static_cast<long>(std::ceil(4.0 * t)) + 20; }

// P(h(0,t) <= n) from the Fredholm determinant of the spectral projection.
// M = 0 selects the default truncation and doubles it until the value moves
// by less than tol. An explicit M is checked against M + 20.
inline double png_cdf_fredholm_discrete(long n, double t, long M = 0, double tol = 1e-10) {
    if (n < 0) throw InvalidParameter("n must be nonnegative");
    if (!(t > 0.0)) throw InvalidParameter("t must be positive");
    if (M == 0) {
        M = default_truncation(n, t);
        double v = DiscreteProjection(t, M).cdf(n);
        for (int k = 0; k < 6; ++k) {
            M *= 2;
            double w = DiscreteProjection(t, M).cdf(n);
            if (std::fabs(w - v) < tol) return w;
            v = w;
        }
        throw AccuracyFailure("discrete Fredholm determinant did not settle under truncation doubling");
    }
    if (M < n + static_cast<long>(std::ceil(4.0 * t))) throw InvalidParameter("truncation M below n + 4t");
    double v = DiscreteProjection(t, M).cdf(n);
    double w = DiscreteProjection(t, M + 20).cdf(n);
    if (std::fabs(w - v) > std::max(tol, 1e-8)) throw AccuracyFailure("truncation M too small");
    return v;
}

// CDF table n = 0..nmax from a single eigendecomposition.
inline std::vector<double> png_cdf_fredholm_table(long nmax, double t, long M = 0) {
    if (M == 0) M = default_truncation(nmax, t);
    DiscreteProjection p(t, M);
    std::vector<double> out;
    for (long n = 0; n <= nmax; ++n) out.push_back(p.cdf(n));
    return out;
}

} // namespace kpz
