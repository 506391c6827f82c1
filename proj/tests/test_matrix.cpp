#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "kpz/airy/covariance.hpp"
#include "kpz/airy/kernels.hpp"
#include "kpz/harness/stats.hpp"
#include "kpz/matrix/gue.hpp"

using namespace kpz;

namespace {

double normal_cdf(double x) { return boost::math::cdf(boost::math::normal(), x); }

// Haar unitary from the QR decomposition of a complex Ginibre matrix
Eigen::MatrixXcd haar_unitary(int n, Rng& rng) {
    Eigen::MatrixXcd z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z(i, j) = {rng.normal(), rng.normal()};
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR();
    for (int j = 0; j < n; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
    return q;
}

} // namespace

TEST(Gue, HermitianByConstruction) {
    Rng rng(1);
    auto a = sample_gue(6, rng);
    EXPECT_TRUE(a.is_hermitian());
    auto b = HermitianMatrix::combine(0.3, a, -1.2, sample_gue(6, rng));
    EXPECT_TRUE(b.is_hermitian());
    EXPECT_THROW(HermitianMatrix::combine(1.0, a, 1.0, sample_gue(5, rng)), InvalidParameter);
    HermitianMatrix m(3);
    EXPECT_THROW(m.set_lower(0, 1, 1.0), InvalidParameter);
}

TEST(Gue, OneByOne) {
    Rng rng(2);
    std::vector<double> v;
    for (int k = 0; k < 20000; ++k) v.push_back(sample_gue(1, rng)(0, 0).real());
    EXPECT_LE(ks_distance(make_sample_set("n1", v), normal_cdf), ks_threshold_3sigma(v.size()));
}

TEST(Gue, EntryVariances) {
    Rng rng(3);
    const int N = 8, reps = 20000;
    double dd = 0, re = 0, im = 0;
    for (int k = 0; k < reps; ++k) {
        auto a = sample_gue(N, rng);
        dd += a(2, 2).real() * a(2, 2).real();
        re += a(5, 1).real() * a(5, 1).real();
        im += a(5, 1).imag() * a(5, 1).imag();
    }
    // chi-square(1) based sd of a sample variance: sqrt(2/reps)
    const double tol = 4.0 * std::sqrt(2.0 / reps);
    EXPECT_NEAR(dd / reps / N, 1.0, tol);
    EXPECT_NEAR(re / reps / (N / 2.0), 1.0, tol);
    EXPECT_NEAR(im / reps / (N / 2.0), 1.0, tol);
}

TEST(Gue, SemicircleMoments) {
    // second and fourth spectral moments of lambda / N: 1 and 2 (Catalan)
    Rng rng(4);
    const int N = 200;
    double m2 = 0, m4 = 0;
    const int reps = 10;
    for (int r = 0; r < reps; ++r) {
        auto ev = sample_gue(N, rng).eigenvalues();
        EXPECT_LT(ev(N - 1), 2.3 * N);
        for (int i = 0; i < N; ++i) {
            double x = ev(i) / N;
            m2 += x * x / (N * reps);
            m4 += x * x * x * x / (N * reps);
        }
    }
    EXPECT_NEAR(m2, 1.0, 0.02);
    EXPECT_NEAR(m4, 2.0, 0.06);
}

TEST(Gue, EdgeAgainstTracyWidom) {
    Rng rng(5);
    const int N = 200;
    std::vector<double> v;
    for (int k = 0; k < 2000; ++k) v.push_back((sample_gue(N, rng).largest_eigenvalue() - 2.0 * N) / std::cbrt(N));
    EXPECT_LE(ks_distance(make_sample_set("edge", v), [](double s) { return tw2_cdf(s); }), 0.1);
}

TEST(Ou, ZeroLagIdentical) {
    Rng rng(6);
    auto p = ou_two_time(5, 0.0, rng);
    EXPECT_EQ((p.first.matrix() - p.second.matrix()).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_THROW(ou_transition(p.first, -1.0, rng), InvalidParameter);
}

TEST(Ou, LongLagDecorrelates) {
    EXPECT_LT(ou_correlation(5, 1000.0), 1e-40);
    Rng rng(7);
    std::vector<double> a, b;
    for (int k = 0; k < 20000; ++k) {
        auto p = ou_two_time(5, 500.0, rng);
        a.push_back(p.first(0, 0).real());
        b.push_back(p.second(0, 0).real());
    }
    EXPECT_NEAR(correlation(a, b), 0.0, 3.0 / std::sqrt(20000.0));
}

TEST(Ou, EntryCorrelation) {
    Rng rng(8);
    const int N = 20, n = 100000;
    const double t = 10.0;
    std::vector<double> a, b;
    for (int k = 0; k < n; ++k) {
        auto p = ou_two_time(N, t, rng);
        a.push_back(p.first(0, 0).real());
        b.push_back(p.second(0, 0).real());
    }
    double rho = std::exp(-t / (2.0 * N));
    EXPECT_NEAR(correlation(a, b), rho, 3.0 * (1 - rho * rho) / std::sqrt(n));
}

TEST(Ou, Stationary) {
    Rng rng(9);
    const int N = 6, reps = 20000;
    double s = 0;
    for (int k = 0; k < reps; ++k) {
        auto p = ou_two_time(N, 3.0, rng);
        s += p.second(3, 3).real() * p.second(3, 3).real();
    }
    EXPECT_NEAR(s / reps / N, 1.0, 4.0 * std::sqrt(2.0 / reps));
}

TEST(BrownianPath, IncrementVariance) {
    Rng rng(10);
    const int reps = 20000;
    const double dt = 0.4;
    double d = 0, o = 0;
    for (int k = 0; k < reps; ++k) {
        auto path = gue_brownian_path(4, 1.0, {0.5, 0.5 + dt}, rng);
        auto inc = HermitianMatrix::combine(1.0, path[1], -1.0, path[0]);
        d += inc(1, 1).real() * inc(1, 1).real();
        o += inc(2, 0).imag() * inc(2, 0).imag();
    }
    EXPECT_NEAR(d / reps / dt, 1.0, 4.0 * std::sqrt(2.0 / reps));
    EXPECT_NEAR(o / reps / (dt / 2), 1.0, 4.0 * std::sqrt(2.0 / reps));
    EXPECT_THROW(gue_brownian_path(4, 1.0, {0.5, 0.2}, rng), InvalidParameter);
    EXPECT_THROW(gue_brownian_path(4, 1.0, {2.5}, rng), InvalidParameter);
}

TEST(BrownianPath, QuadraticFormLinearVariance) {
    // <f, B(t) f> for a fixed unit vector is a standard Brownian motion
    Rng rng(11);
    const int N = 5, reps = 20000;
    Eigen::VectorXcd f(N);
    for (int i = 0; i < N; ++i) f(i) = {rng.normal(), rng.normal()};
    f.normalize();
    std::vector<double> grid = {0.25, 0.5, 0.75, 1.0, 1.25, 1.5};
    std::vector<double> var(grid.size(), 0.0);
    for (int k = 0; k < reps; ++k) {
        auto path = gue_brownian_path(N, 1.0, grid, rng);
        for (std::size_t g = 0; g < grid.size(); ++g) {
            double q = (f.adjoint() * path[g].matrix() * f)(0, 0).real();
            var[g] += q * q / reps;
        }
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        sx += grid[g];
        sy += var[g];
        sxx += grid[g] * grid[g];
        sxy += grid[g] * var[g];
    }
    double m = static_cast<double>(grid.size());
    double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    // the estimates share paths; sd of each is about t sqrt(2/reps)
    EXPECT_NEAR(slope, 1.0, 3.0 * 1.5 * std::sqrt(2.0 / reps) / 0.5);
}

TEST(BrownianPath, RotationInvariance) {
    Rng rng(12);
    const int N = 4;
    const double t = 0.8;
    std::vector<double> v;
    for (int k = 0; k < 20000; ++k) {
        auto b = gue_brownian_path(N, 1.0, {t}, rng).back();
        Eigen::MatrixXcd u = haar_unitary(N, rng);
        Eigen::MatrixXcd r = u * b.matrix() * u.adjoint();
        v.push_back(r(0, 0).real() / std::sqrt(t));
    }
    EXPECT_LE(ks_distance(make_sample_set("rot", v), normal_cdf), ks_threshold_3sigma(v.size()));
}

TEST(Bridge, PinnedEnds) {
    Rng rng(13);
    auto m = gue_bridge_matrices(5, 2.0, {-2.0, -1.0, 0.0, 2.0}, rng);
    EXPECT_EQ(m.front().matrix().cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(m.back().matrix().cwiseAbs().maxCoeff(), 0.0);
}

TEST(Bridge, MidpointVariance) {
    Rng rng(14);
    const double T = 1.5;
    const int reps = 20000;
    double d = 0, o = 0;
    for (int k = 0; k < reps; ++k) {
        auto m = gue_bridge_matrices(3, T, {0.0}, rng).front();
        d += m(0, 0).real() * m(0, 0).real();
        o += m(2, 1).real() * m(2, 1).real();
    }
    EXPECT_NEAR(d / reps / (T / 2), 1.0, 4.0 * std::sqrt(2.0 / reps));
    EXPECT_NEAR(o / reps / (T / 4), 1.0, 4.0 * std::sqrt(2.0 / reps));
}

TEST(Bridge, TopLineConcaveAndOrdered) {
    Rng rng(15);
    const int N = 10, reps = 2000;
    const double T = 1.0;
    std::vector<double> grid;
    for (int k = -4; k <= 4; ++k) grid.push_back(0.25 * k);
    std::vector<double> mean(grid.size(), 0.0);
    for (int r = 0; r < reps; ++r) {
        auto p = gue_bridge_ensemble(N, T, grid, rng);
        std::vector<double> inner(p.times.begin() + 1, p.times.end() - 1);
        for (std::size_t g = 0; g < grid.size(); ++g) mean[g] += p.values[g](N - 1) / reps;
        EigenPath interior{inner, std::vector<Eigen::VectorXd>(p.values.begin() + 1, p.values.end() - 1)};
        ASSERT_TRUE(interior.strictly_ordered());
    }
    for (std::size_t g = 1; g + 1 < grid.size(); ++g) EXPECT_LT(mean[g - 1] + mean[g + 1] - 2 * mean[g], 0.0) << g;
}

TEST(Edge, SingleTimeReduction) {
    Rng a(16), b(16);
    auto e = edge_process_samples(30, {0.0}, a);
    EXPECT_NEAR(e[0], (sample_gue(30, b).largest_eigenvalue() - 60.0) / std::cbrt(30.0), 1e-12);
    EXPECT_THROW(edge_process_samples(30, {1.0, 0.0}, a), InvalidParameter);
}

TEST(Edge, StationaryMarginal) {
    Rng rng(17);
    std::vector<double> t0, t1;
    for (int k = 0; k < 2000; ++k) {
        auto e = edge_process_samples(40, {0.0, 1.0}, rng);
        t0.push_back(e[0]);
        t1.push_back(e[1]);
    }
    EXPECT_LE(ks_two_sample(t0, t1), ks_threshold_3sigma(t0.size(), t1.size()));
}

TEST(Edge, TwoTimeCovariance) {
    Rng rng(18);
    const int N = 100;
    std::vector<double> a, b;
    for (int k = 0; k < 1000; ++k) {
        auto e = edge_process_samples(N, {0.0, 1.0}, rng);
        a.push_back(e[0]);
        b.push_back(e[1]);
    }
    CovarianceGrid coarse;
    coarse.step = 0.1;
    double g2 = airy_covariance(AiryProcess::A2, 1.0, coarse).value;
    EXPECT_NEAR(covariance(a, b), g2, 0.25 * g2);
}
