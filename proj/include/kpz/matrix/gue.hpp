#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "kpz/core/error.hpp"
#include "kpz/core/random.hpp"

namespace kpz {

// Hermitian matrix built from its lower triangle; the upper triangle is the
// exact conjugate mirror so Hermiticity holds bit for bit.
class HermitianMatrix {
public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(int n) : a_(Eigen::MatrixXcd::Zero(n, n)) {}

    int dim() const { return static_cast<int>(a_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return a_; }
    std::complex<double> operator()(int i, int j) const { return a_(i, j); }

    void set_diagonal(int i, double v) { a_(i, i) = v; }
    void set_lower(int i, int j, std::complex<double> v) {
        if (i <= j) throw InvalidParameter("lower-triangle index expected");
        a_(i, j) = v;
        a_(j, i) = std::conj(v);
    }

    bool is_hermitian() const {
        for (int i = 0; i < dim(); ++i) {
            if (a_(i, i).imag() != 0.0) return false;
            for (int j = 0; j < i; ++j)
                if (a_(i, j) != std::conj(a_(j, i))) return false;
        }
        return true;
    }

    // a x + b y, entrywise on the lower triangle
    static HermitianMatrix combine(double a, const HermitianMatrix& x, double b, const HermitianMatrix& y) {
        if (x.dim() != y.dim()) throw InvalidParameter("dimension mismatch");
        HermitianMatrix r(x.dim());
        for (int i = 0; i < x.dim(); ++i) {
            r.set_diagonal(i, a * x.a_(i, i).real() + b * y.a_(i, i).real());
            for (int j = 0; j < i; ++j) r.set_lower(i, j, a * x.a_(i, j) + b * y.a_(i, j));
        }
        return r;
    }

    // ascending
    Eigen::VectorXd eigenvalues() const {
        if (dim() == 0) return {};
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a_, Eigen::EigenvaluesOnly);
        return es.eigenvalues();
    }
    double largest_eigenvalue() const { return eigenvalues()(dim() - 1); }

private:
    Eigen::MatrixXcd a_;
};

// Gaussian Hermitian matrix with diagonal variance v and real/imaginary
// off-diagonal parts of variance v/2. Draw order: row by row, diagonal then
// (re, im) of each lower entry.
inline HermitianMatrix gaussian_hermitian(int n, double v, Rng& rng) {
    if (n < 1) throw InvalidParameter("dimension must be positive");
    HermitianMatrix m(n);
    const double sd = std::sqrt(v), so = std::sqrt(v / 2.0);
    for (int i = 0; i < n; ++i) {
        m.set_diagonal(i, sd * rng.normal());
        for (int j = 0; j < i; ++j) {
            double re = so * rng.normal();
            double im = so * rng.normal();
            m.set_lower(i, j, {re, im});
        }
    }
    return m;
}

// density proportional to exp(-tr A^2 / 2N)
inline HermitianMatrix sample_gue(int n, Rng& rng) { return gaussian_hermitian(n, static_cast<double>(n), rng); }

// Stationary OU pair at lag t: A2 = q A1 + sqrt(1-q^2) G, q = exp(-t/2N).
// Drift 1/2N with unit-pattern Brownian noise keeps the GUE law stationary.
struct MatrixPair {
    HermitianMatrix first, second;
};

inline double ou_correlation(int n, double t) { return std::exp(-t / (2.0 * n)); }

inline HermitianMatrix ou_transition(const HermitianMatrix& a, double t, Rng& rng) {
    if (!(t >= 0.0)) throw InvalidParameter("lag must be nonnegative");
    const double q = ou_correlation(a.dim(), t);
    if (q == 1.0) return a;
    HermitianMatrix g = sample_gue(a.dim(), rng);
    return HermitianMatrix::combine(q, a, std::sqrt(1.0 - q * q), g);
}

inline MatrixPair ou_two_time(int n, double t, Rng& rng) {
    HermitianMatrix a = sample_gue(n, rng);
    HermitianMatrix b = ou_transition(a, t, rng);
    return {a, b};
}

namespace detail {
inline void check_grid(const std::vector<double>& g, double lo, double hi) {
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (g[k] < lo || g[k] > hi) throw InvalidParameter("grid point outside the allowed range");
        if (k > 0 && g[k] <= g[k - 1]) throw InvalidParameter("grid must be strictly increasing");
    }
}
} // namespace detail

// Hermitian Brownian motion B(0) = 0 sampled on an increasing grid in [0, 2T];
// increments over dt have the unit pattern scaled by dt.
inline std::vector<HermitianMatrix> gue_brownian_path(int n, double T, const std::vector<double>& grid, Rng& rng) {
    if (!(T > 0)) throw InvalidParameter("T must be positive");
    detail::check_grid(grid, 0.0, 2.0 * T);
    std::vector<HermitianMatrix> out;
    out.reserve(grid.size());
    HermitianMatrix cur(n);
    double last = 0.0;
    for (double s : grid) {
        double dt = s - last;
        if (dt > 0) cur = HermitianMatrix::combine(1.0, cur, 1.0, gaussian_hermitian(n, dt, rng));
        out.push_back(cur);
        last = s;
    }
    return out;
}

struct EigenPath {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> values;  // ascending per time

    bool strictly_ordered() const {
        for (const auto& v : values)
            for (long i = 1; i < v.size(); ++i)
                if (!(v(i) > v(i - 1))) return false;
        return true;
    }
};

// A(t) = B(T+t) - (T+t)/(2T) B(2T) on grid points in [-T, T].
inline std::vector<HermitianMatrix> gue_bridge_matrices(int n, double T, const std::vector<double>& grid, Rng& rng) {
    if (!(T > 0)) throw InvalidParameter("T must be positive");
    detail::check_grid(grid, -T, T);
    std::vector<double> bt;
    for (double t : grid) bt.push_back(T + t);
    bool has_end = !bt.empty() && bt.back() == 2.0 * T;
    if (!has_end) bt.push_back(2.0 * T);
    auto path = gue_brownian_path(n, T, bt, rng);
    const HermitianMatrix& end = path.back();
    std::vector<HermitianMatrix> out;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        double c = (T + grid[k]) / (2.0 * T);
        if (c == 1.0) out.push_back(HermitianMatrix(n));  // exact pinning
        else out.push_back(HermitianMatrix::combine(1.0, path[k], -c, end));
    }
    return out;
}

inline EigenPath gue_bridge_ensemble(int n, double T, const std::vector<double>& grid, Rng& rng) {
    EigenPath p;
    p.times = grid;
    for (const auto& m : gue_bridge_matrices(n, T, grid, rng)) p.values.push_back(m.eigenvalues());
    return p;
}

// N^{-1/3} (lambda_N(2 N^{2/3} tau) - 2N) along the stationary OU process at
// nondecreasing times tau.
inline std::vector<double> edge_process_samples(int n, const std::vector<double>& taus, Rng& rng) {
    if (taus.empty()) return {};
    for (std::size_t k = 1; k < taus.size(); ++k)
        if (taus[k] < taus[k - 1]) throw InvalidParameter("times must be nondecreasing");
    const double tscale = 2.0 * std::pow(n, 2.0 / 3.0), yscale = std::pow(n, 1.0 / 3.0);
    std::vector<double> out;
    HermitianMatrix a = sample_gue(n, rng);
    for (std::size_t k = 0; k < taus.size(); ++k) {
        if (k > 0) a = ou_transition(a, tscale * (taus[k] - taus[k - 1]), rng);
        out.push_back((a.largest_eigenvalue() - 2.0 * n) / yscale);
    }
    return out;
}

} // namespace kpz
