#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "kpz/exact/schuetz.hpp"
#include "kpz/harness/stats.hpp"
#include "kpz/interlace/array.hpp"
#include "kpz/interlace/aztec.hpp"
#include "kpz/interlace/tiling.hpp"

using namespace kpz;

namespace {

// (1,3) sits right behind (1,2); (2,2), (3,3), (4,4) share position 2
InterlacedArray pushing_example() { return interlace_from_levels({{0}, {-1, 2}, {-2, 0, 2}, {-3, -2, 1, 2}}); }

std::set<std::string> facet_keys(const TilingDocument& d) {
    std::set<std::string> out;
    for (const auto& f : d.facets) {
        std::string k = f.kind;
        for (const auto& [x, y] : f.polygon) k += ";" + std::to_string(std::lround(2 * x)) + "," + std::to_string(std::lround(4 * y));
        out.insert(k);
    }
    return out;
}

} // namespace

TEST(Interlace, InitialArray) {
    auto one = interlace_init(1);
    EXPECT_EQ(one.at(1, 1), -1);
    auto s = interlace_init(3);
    EXPECT_EQ(s.x[2], (std::vector<long>{-3, -2, -1}));
    EXPECT_TRUE(s.interlaced());
    EXPECT_THROW(interlace_init(0), InvalidParameter);
    EXPECT_THROW(interlace_from_levels({{0}, {0, 1}}), InvalidInput);
}

TEST(Interlace, BlockedAttempt) {
    auto s = pushing_example();
    auto before = s.x;
    EXPECT_EQ(interlace_attempt(s, 1, 3), 0);
    EXPECT_EQ(s.x, before);
}

TEST(Interlace, PushChain) {
    auto s = pushing_example();
    EXPECT_EQ(interlace_attempt(s, 2, 2), 3);
    EXPECT_EQ(s.at(2, 2), 3);
    EXPECT_EQ(s.at(3, 3), 3);
    EXPECT_EQ(s.at(4, 4), 3);
    EXPECT_EQ(s.at(3, 4), 1);
    EXPECT_TRUE(s.interlaced());
    EXPECT_THROW(interlace_attempt(s, 3, 2), InvalidParameter);
}

TEST(Interlace, FreeJumpOnTop) {
    // packed start: (1,1), (2,2), (3,3), (4,4) all sit at -1 and move together
    auto s = interlace_init(4);
    EXPECT_EQ(interlace_attempt(s, 1, 1), 4);
    EXPECT_EQ(s.at(1, 1), 0);
    EXPECT_EQ(s.at(4, 4), 0);
    // (1,2) at -2 may now move to -1, carrying (2,3) and (3,4)
    EXPECT_EQ(interlace_attempt(s, 1, 2), 3);
    EXPECT_EQ(interlace_attempt(s, 1, 2), 0);
    EXPECT_TRUE(s.interlaced());
}

TEST(Interlace, RandomRunsStayInterlaced) {
    Rng rng(1);
    long events = 0;
    auto s = interlace_ct_run(interlace_init(6), 3.0, rng, [&](const InterlacedArray& a, const InterlaceEvent& e) {
        ++events;
        ASSERT_TRUE(a.interlaced());
        ASSERT_GE(e.moved, 0);
    });
    EXPECT_GT(events, 0);
    EXPECT_DOUBLE_EQ(s.time, 3.0);
}

TEST(Interlace, SingleParticleIsPoisson) {
    Rng rng(2);
    const double t = 1.5;
    std::vector<long> v;
    for (int k = 0; k < 20000; ++k) v.push_back(interlace_ct_run(interlace_init(1), t, rng).at(1, 1));
    auto G = [&](long x) {
        double c = 0;
        for (long j = 0; j <= x + 1; ++j) c += std::exp(-t + j * std::log(t) - std::lgamma(j + 1.0));
        return c;
    };
    EXPECT_LE(ks_distance_lattice(v, G), ks_threshold_3sigma(v.size()));
}

TEST(Interlace, ProjectionAtTimeZero) {
    auto p = project_level_edge(interlace_init(5));
    for (int n = 1; n <= 5; ++n) EXPECT_EQ(p[static_cast<std::size_t>(n - 1)], -n);
}

TEST(Interlace, ProjectionIsTasep) {
    // leftmost of five TASEP particles started from -1, ..., -5
    const double t = 1.0;
    const std::vector<long> y = {-1, -2, -3, -4, -5};
    std::map<long, double> law;
    for (const auto& [x, p] : schuetz_distribution(y, t, 1e-10)) law[x.back()] += p;
    auto G = [&](long x) {
        double c = 0;
        for (const auto& [k, p] : law)
            if (k <= x) c += p;
        return c;
    };
    Rng rng(3);
    std::vector<long> last, first;
    for (int k = 0; k < 20000; ++k) {
        auto p = project_level_edge(interlace_ct_run(interlace_init(5), t, rng));
        first.push_back(p.front());
        last.push_back(p.back());
    }
    EXPECT_LE(ks_distance_lattice(last, G), ks_threshold_3sigma(last.size()));
    std::map<long, double> law1;
    for (const auto& [x, p] : schuetz_distribution(y, t, 1e-10)) law1[x.front()] += p;
    auto G1 = [&](long x) {
        double c = 0;
        for (const auto& [k, p] : law1)
            if (k <= x) c += p;
        return c;
    };
    EXPECT_LE(ks_distance_lattice(first, G1), ks_threshold_3sigma(first.size()));
}

TEST(Aztec, InitialState) {
    auto a = aztec_init(4, 0.5);
    EXPECT_TRUE(a.interlaced());
    auto x = aztec_to_tasep(a);
    for (int n = 1; n <= 4; ++n) EXPECT_EQ(x[static_cast<std::size_t>(n - 1)], -n);
    EXPECT_THROW(aztec_init(3, 1.5), InvalidParameter);
}

TEST(Aztec, DeterministicLimits) {
    for (double q : {0.0, 1.0}) {
        Rng a(4), b(5);
        auto r1 = aztec_shuffle_run(5, q, 7, a, [](const AztecArray& s) { ASSERT_TRUE(s.interlaced()); });
        auto r2 = aztec_shuffle_run(5, q, 7, b);
        EXPECT_EQ(r1.z, r2.z) << "q=" << q;
    }
}

TEST(Aztec, FrozenAtZero) {
    // from the packed start no particle is ever forced, so q = 0 freezes everything
    Rng rng(6);
    auto a = aztec_shuffle_run(4, 0.0, 4, rng);
    EXPECT_EQ(a.z, aztec_init(4, 0.0).z);
}

TEST(Aztec, FrozenLevels) {
    Rng rng(7);
    auto a = aztec_init(4, 1.0);
    aztec_step(a, rng);
    EXPECT_EQ(a.z[1], (std::vector<long>{0, 1}));
    EXPECT_EQ(a.z[0], (std::vector<long>{1}));
}

TEST(Aztec, UniformSmallDiamonds) {
    Rng rng(8);
    for (int order : {1, 2}) {
        std::map<std::string, long> seen;
        const int reps = 8000;
        for (int k = 0; k < reps; ++k) {
            auto a = aztec_shuffle_run(order, 0.5, order, rng);
            auto d = render_domino(a);
            ASSERT_TRUE(d.exact_cover());
            ++seen[tiling_key(d)];
        }
        std::size_t expected = order == 1 ? 2 : 8;
        ASSERT_EQ(seen.size(), expected);
        std::vector<long> counts;
        for (const auto& [k, c] : seen) counts.push_back(c);
        EXPECT_TRUE(chi_square_uniform(counts).pass) << "order " << order;
    }
}

TEST(Aztec, DominoRenderingNeedsSteps) {
    auto a = aztec_init(3, 0.5);
    EXPECT_THROW(render_domino(a), InvalidInput);
}

TEST(Tiling, OrderedInitialTiling) {
    auto d = render_lozenge(interlace_init(4), 5);
    EXPECT_TRUE(d.exact_cover());
    EXPECT_EQ(d.shape, "lozenge");
    EXPECT_GT(d.count("vertical"), 0u);
    auto e = render_lozenge(interlace_init(4), 5);
    EXPECT_EQ(tiling_key(d), tiling_key(e));
}

TEST(Tiling, FacetCountDependsOnlyOnSize) {
    Rng rng(9);
    auto s = interlace_init(5);
    const std::size_t count = render_lozenge(s, 6).facets.size();
    for (int k = 0; k < 20; ++k) {
        s = interlace_ct_run(s, 0.05, rng);
        if (s.at(5, 5) >= 6) break;
        auto d = render_lozenge(s, 6);
        EXPECT_TRUE(d.exact_cover());
        EXPECT_EQ(d.facets.size(), count);
    }
}

TEST(Tiling, SingleJumpIsLocal) {
    auto s = pushing_example();
    auto before = facet_keys(render_lozenge(s, 8));
    int moved = interlace_attempt(s, 1, 1);
    ASSERT_EQ(moved, 1);
    auto after = facet_keys(render_lozenge(s, 8));
    std::vector<std::string> diff;
    std::set_symmetric_difference(before.begin(), before.end(), after.begin(), after.end(), std::back_inserter(diff));
    EXPECT_GT(diff.size(), 0u);
    EXPECT_LE(diff.size(), 8u);
}

TEST(Tiling, Outputs) {
    Rng rng(10);
    auto d = render_domino(aztec_shuffle_run(3, 0.5, 3, rng));
    auto svg = tiling_svg(d);
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
    auto j = tiling_json(d);
    EXPECT_EQ(j["shape"], "domino");
    EXPECT_EQ(j["facets"].size(), d.facets.size());
    // the order-3 diamond has 2 n (n + 1) = 24 cells
    EXPECT_EQ(d.facets.size(), 12u);
}
