#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "kpz/growth/height.hpp"
#include "kpz/growth/tasep.hpp"
#include "kpz/harness/io.hpp"
#include "kpz/harness/stats.hpp"
#include "kpz/lpp/lis.hpp"
#include "kpz/lpp/lpp.hpp"
#include "kpz/lpp/weights.hpp"

using namespace kpz;

namespace {

WeightGrid grid_of(const std::vector<std::vector<double>>& rows) {
    WeightGrid g;
    g.rows = static_cast<long>(rows.size());
    g.cols = static_cast<long>(rows[0].size());
    for (const auto& r : rows) g.w.insert(g.w.end(), r.begin(), r.end());
    return g;
}

// Exhaustive maximum over up-right paths from (i0, j0) to (n, m).
double brute_force(const WeightGrid& w, long i0, long j0, long n, long m) {
    std::function<double(long, long)> rec = [&](long i, long j) -> double {
        double here = w(i, j);
        if (i == n && j == m) return here;
        double best = -1e300;
        if (i < n) best = std::max(best, rec(i + 1, j));
        if (j < m) best = std::max(best, rec(i, j + 1));
        return here + best;
    };
    return rec(i0, j0);
}

long lis_brute(const std::vector<long>& p) {
    long best = 0;
    const std::size_t n = p.size();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        long last = -1, len = 0;
        bool ok = true;
        for (std::size_t k = 0; k < n && ok; ++k)
            if (mask & (1u << k)) {
                ok = p[k] > last;
                last = p[k];
                ++len;
            }
        if (ok) best = std::max(best, len);
    }
    return best;
}

double mean_of(const WeightGrid& g) { return std::accumulate(g.w.begin(), g.w.end(), 0.0) / static_cast<double>(g.w.size()); }

} // namespace

TEST(Weights, GeometricZero) {
    Rng rng(1);
    auto g = sample_weights(WeightLaw::geometric(0.0), 5, 7, rng);
    for (double v : g.w) EXPECT_EQ(v, 0.0);
    EXPECT_THROW(sample_weights(WeightLaw::geometric(1.0), 2, 2, rng), InvalidParameter);
}

TEST(Weights, Means) {
    Rng rng(2);
    auto g = sample_weights(WeightLaw::geometric(0.5), 300, 300, rng);
    // variance q/(1-q)^2 = 2
    EXPECT_NEAR(mean_of(g), 1.0, 4.0 * std::sqrt(2.0 / 90000.0));
    for (double v : g.w) ASSERT_EQ(v, std::floor(v));
    auto e = sample_weights(WeightLaw::exponential(), 300, 300, rng);
    EXPECT_NEAR(mean_of(e), 1.0, 4.0 / 300.0);
    auto p = sample_weights(WeightLaw::geometric_plus_one(0.5), 300, 300, rng);
    EXPECT_NEAR(mean_of(p), 2.0, 4.0 * std::sqrt(2.0 / 90000.0));
}

TEST(PointToPoint, OneByOne) {
    auto w = grid_of({{3.5}});
    EXPECT_EQ(lpp_point_to_point(w, 1, 1).value, 3.5);
}

TEST(PointToPoint, TwoByTwo) {
    auto w = grid_of({{1, 2}, {3, 4}});
    auto r = lpp_point_to_point(w, 2, 2);
    EXPECT_EQ(r.value, 8.0);
    EXPECT_EQ(r.path, (std::vector<std::pair<long, long>>{{1, 1}, {2, 1}, {2, 2}}));
}

TEST(PointToPoint, TieBreakPrefersColumnStep) {
    auto w = grid_of({{1, 1}, {1, 1}});
    auto r = lpp_point_to_point(w, 2, 2);
    // backtracking from (2,2) takes the (0,1) step into it
    EXPECT_EQ(r.path, (std::vector<std::pair<long, long>>{{1, 1}, {2, 1}, {2, 2}}));
}

TEST(PointToPoint, MatchesExhaustiveSearch) {
    Rng rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        auto w = sample_weights(WeightLaw::exponential(), 6, 6, rng);
        double bf = brute_force(w, 1, 1, 6, 6);
        auto r = lpp_point_to_point(w, 6, 6);
        EXPECT_NEAR(r.value, bf, 1e-12);
        EXPECT_NEAR(lpp_value(w, 6, 6), bf, 1e-12);
        double along = 0.0;
        for (auto [i, j] : r.path) along += w(i, j);
        EXPECT_NEAR(along, bf, 1e-12);
        for (long n = 1; n <= 6; ++n)
            for (long m = 1; m <= 6; ++m) EXPECT_NEAR(lpp_table(w, 6, 6)(n, m), brute_force(w, 1, 1, n, m), 1e-12);
    }
    EXPECT_THROW(lpp_value(sample_weights(WeightLaw::exponential(), 2, 2, rng), 3, 1), OutOfWindow);
}

TEST(PointToPoint, Superadditive) {
    Rng rng(4);
    const long n = 8;
    auto w = sample_weights(WeightLaw::exponential(), 2 * n, 2 * n, rng);
    WeightGrid lower = sample_weights(WeightLaw::exponential(), n, n, rng), upper = lower;
    for (long i = 1; i <= n; ++i)
        for (long j = 1; j <= n; ++j) {
            lower.at(i, j) = w(i, j);
            upper.at(i, j) = w(i + n, j + n);
        }
    EXPECT_GE(lpp_value(w, 2 * n, 2 * n), lpp_value(lower, n, n) + lpp_value(upper, n, n));
}

TEST(PointToLine, SingleSite) {
    Rng rng(5);
    auto w = sample_weights_half_plane(WeightLaw::exponential(), 1, 1, rng);
    EXPECT_EQ(lpp_point_to_line(w, 1, 1).value, w(1, 1));
}

TEST(PointToLine, MaxOverStartingPoints) {
    Rng rng(6);
    for (int rep = 0; rep < 20; ++rep) {
        auto w = sample_weights_half_plane(WeightLaw::exponential(), 4, 4, rng);
        double best = -1.0;
        for (long k = 2 - 4; k <= 4; ++k) {
            long i0 = k, j0 = 2 - k;
            if (j0 < w.j0 || j0 > 4 || i0 > 4) continue;
            best = std::max(best, brute_force(w, i0, j0, 4, 4));
        }
        auto r = lpp_point_to_line(w, 4, 4);
        EXPECT_NEAR(r.value, best, 1e-12);
        EXPECT_EQ(r.path.front().first + r.path.front().second, 2);
    }
}

TEST(PointToLine, WindowChecked) {
    Rng rng(7);
    auto w = sample_weights(WeightLaw::exponential(), 4, 4, rng);
    EXPECT_THROW(lpp_point_to_line(w, 4, 4), OutOfWindow);
}

TEST(Slice, Coordinates) {
    Rng rng(8);
    auto w = sample_weights(WeightLaw::geometric(0.4), 6, 6, rng);
    auto g = lpp_table(w, 6, 6);
    EXPECT_EQ(png_slice(g, 0, 1), g(1, 1));
    EXPECT_EQ(png_slice(g, 1, 2), g(2, 1));
    EXPECT_THROW(png_slice(g, 0, 2), InvalidQuery);
}

TEST(Slice, DiscretePngProfile) {
    // every height dominates its two neighbours one time step earlier and
    // integer geometric weights keep heights integer
    Rng rng(9);
    auto w = sample_weights(WeightLaw::geometric(0.3), 8, 8, rng);
    auto g = lpp_table(w, 8, 8);
    const long t = 5;
    for (long x = -(t - 1); x <= t - 1; x += 2) {
        double h = png_slice(g, x, t);
        EXPECT_EQ(h, std::floor(h));
        for (long dx : {-1L, 1L}) {
            long xp = x + dx;
            if (std::labs(xp) <= t - 2) {
                EXPECT_GE(h, png_slice(g, xp, t - 1));
            }
        }
    }
}

TEST(TasepSlice, NeedsExponential) {
    Rng rng(10);
    auto w = sample_weights(WeightLaw::geometric(0.3), 2, 2, rng);
    EXPECT_THROW(tasep_slice(w, 1.0, 1, 1), InvalidLaw);
}

TEST(TasepSlice, FirstJumpExponential) {
    Rng rng(11);
    const int n = 50000;
    int hit = 0;
    for (int k = 0; k < n; ++k) hit += tasep_slice(sample_weights(WeightLaw::exponential(), 1, 1, rng), 1.0, 1, 1);
    double p = 1.0 - std::exp(-1.0);
    EXPECT_NEAR(static_cast<double>(hit) / n, p, 3.0 * std::sqrt(p * (1 - p) / n));
}

TEST(TasepSlice, SecondParticleAgainstSimulation) {
    // G(1,2) <= tau iff particle 2 has jumped; G(1,2) is Gamma(2)
    const double tau = 1.5;
    const int n = 100000;
    Rng rng(12);
    auto h0 = make_initial(InitialCondition::make_wedge(), {-6, 10}, rng);
    int lpp_hits = 0, sim_hits = 0;
    for (int k = 0; k < n; ++k) {
        lpp_hits += tasep_slice(sample_weights(WeightLaw::exponential(), 1, 2, rng), tau, 1, 2);
        sim_hits += tasep_ct_run(h0, tau, rng).final_state.particles()[1] >= -1;
    }
    double p = 1.0 - std::exp(-tau) * (1.0 + tau);
    double sigma = std::sqrt(p * (1 - p) / n);
    EXPECT_NEAR(static_cast<double>(lpp_hits) / n, p, 3.0 * sigma);
    EXPECT_NEAR(static_cast<double>(sim_hits) / n, p, 3.0 * sigma);
}

TEST(TasepSlice, TaggedParticleTrajectory) {
    // arrival times of particle 1 along column m = 1 are partial sums of its
    // waiting times; the tagged trajectory read from the table is monotone
    Rng rng(13);
    auto w = sample_weights(WeightLaw::exponential(), 12, 3, rng);
    auto g = lpp_table(w, 12, 3);
    long prev = -10;
    for (double tau = 0.0; tau < g(12, 1); tau += 0.25) {
        auto x = tasep_positions_from_lpp(g, tau, 3);
        EXPECT_GE(x[2], prev);
        prev = x[2];
        EXPECT_GT(x[0], x[1]);
        EXPECT_GT(x[1], x[2]);
    }
}

TEST(TasepSlice, DiscreteUpdatesFromGeometricTables) {
    // parallel update: geometric(+1) weights; sequential: geometric weights
    // with arrival time G(n,m) + n
    const long tau = 8, M = 3;
    const double p = 0.4;
    const int n = 30000;
    Rng rng(14);
    auto h0 = make_initial(InitialCondition::make_wedge(), {-(tau + M + 3), tau + 4}, rng);
    for (Update u : {Update::parallel, Update::sequential}) {
        std::vector<double> direct, lpp;
        for (int k = 0; k < n; ++k) {
            direct.push_back(static_cast<double>(tasep_discrete_run(h0, 1.0 - p, tau, u, rng).particles()[M - 1]));
            WeightLaw law = u == Update::parallel ? WeightLaw::geometric_plus_one(1.0 - p) : WeightLaw::geometric(1.0 - p);
            auto g = lpp_table(sample_weights(law, tau + 1, M, rng), tau + 1, M);
            if (u == Update::sequential)
                for (long i = 1; i <= g.n; ++i)
                    for (long j = 1; j <= g.m; ++j) g.g[static_cast<std::size_t>((i - 1) * g.m + (j - 1))] += static_cast<double>(i);
            lpp.push_back(static_cast<double>(tasep_positions_from_lpp(g, static_cast<double>(tau), M)[M - 1]));
        }
        EXPECT_LE(ks_two_sample(direct, lpp), ks_threshold_3sigma(direct.size(), lpp.size()));
    }
}

TEST(Lis, Examples) {
    EXPECT_EQ(lis_patience({1, 2, 3, 4, 5}), 5u);
    EXPECT_EQ(lis_patience({5, 4, 3, 2, 1}), 1u);
    EXPECT_EQ(lis_patience({3, 1, 4, 2, 5}), 3u);
    EXPECT_EQ(lis_patience({}), 0u);
}

TEST(Lis, MatchesExhaustiveEnumeration) {
    Rng rng(15);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<long> p(1 + rep % 10);
        std::iota(p.begin(), p.end(), 1);
        std::shuffle(p.begin(), p.end(), rng.engine());
        ASSERT_EQ(static_cast<long>(lis_patience(p)), lis_brute(p));
    }
}

TEST(LppIo, Csv) {
    auto w = grid_of({{1, 2}, {3, 4}});
    auto csv = weights_csv(w).str();
    EXPECT_NE(csv.find("i,j"), std::string::npos);
    auto g = lpp_table_csv(lpp_table(w, 2, 2)).str();
    EXPECT_NE(g.find("8"), std::string::npos);
    auto j = to_json(lpp_point_to_point(w, 2, 2));
    EXPECT_EQ(j["value"].get<double>(), 8.0);
}
