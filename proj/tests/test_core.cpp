#include <gtest/gtest.h>

#include <atomic>
#include <set>
#include <stdexcept>
#include <vector>

#include "kpz/core/error.hpp"
#include "kpz/core/parallel.hpp"
#include "kpz/core/random.hpp"

using namespace kpz;

TEST(Random, SameSeedSameStream) {
    Rng a(42), b(42);
    for (int k = 0; k < 100; ++k) EXPECT_EQ(a.uniform(), b.uniform());
}

TEST(Random, SplitSeedsDistinct) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t k = 0; k < 10000; ++k) seen.insert(split_seed(7, k));
    EXPECT_EQ(seen.size(), 10000u);
    EXPECT_NE(split_seed(7, 0), split_seed(8, 0));
}

TEST(Random, ChildMatchesSplitSeed) {
    Rng parent(99);
    Rng c = parent.child(3), d(split_seed(99, 3));
    EXPECT_EQ(c.uniform(), d.uniform());
}

TEST(Random, UniformOpenInterval) {
    Rng r(1);
    for (int k = 0; k < 100000; ++k) {
        double u = r.uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(Random, GeometricMean) {
    // P(k) = (1-q) q^k has mean q/(1-q)
    Rng r(5);
    const double q = 0.3;
    const int n = 200000;
    double s = 0.0, s2 = 0.0;
    for (int k = 0; k < n; ++k) {
        double v = static_cast<double>(r.geometric(q));
        s += v;
        s2 += v * v;
    }
    double mean = s / n, var = s2 / n - mean * mean;
    EXPECT_NEAR(mean, q / (1 - q), 4.0 * std::sqrt(var / n));
    EXPECT_EQ(Rng(1).geometric(0.0), 0);
}

TEST(Random, ExponentialMean) {
    Rng r(6);
    const int n = 200000;
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += r.exponential(2.0);
    EXPECT_NEAR(s / n, 0.5, 4.0 * 0.5 / std::sqrt(n));
}

TEST(Parallel, EverySlotOnce) {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; }, 4);
    for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(Parallel, ScheduleInvariant) {
    auto run = [](unsigned w) {
        std::vector<double> out(500);
        parallel_for(out.size(), [&](std::size_t i) { out[i] = Rng(split_seed(11, i)).uniform(); }, w);
        return out;
    };
    EXPECT_EQ(run(1), run(3));
}

TEST(Parallel, PropagatesExceptions) {
    EXPECT_THROW(parallel_for(10, [](std::size_t i) { if (i == 7) throw InvalidInput("boom"); }, 2), InvalidInput);
}

TEST(Errors, Hierarchy) {
    EXPECT_THROW(require(false, "x"), InvalidParameter);
    EXPECT_NO_THROW(require(true, "x"));
    try {
        throw OutOfWindow("w");
    } catch (const Error& e) {
        SUCCEED();
    }
}
