#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <json.hpp>

#include "kpz/airy/covariance.hpp"
#include "kpz/airy/kernels.hpp"
#include "kpz/core/error.hpp"
#include "kpz/core/parallel.hpp"
#include "kpz/core/random.hpp"
#include "kpz/exact/determinantal.hpp"
#include "kpz/exact/fredholm_discrete.hpp"
#include "kpz/exact/master_equation.hpp"
#include "kpz/exact/schuetz.hpp"
#include "kpz/exact/toeplitz.hpp"
#include "kpz/growth/height.hpp"
#include "kpz/growth/png.hpp"
#include "kpz/growth/tasep.hpp"
#include "kpz/harness/stats.hpp"
#include "kpz/interlace/array.hpp"
#include "kpz/interlace/aztec.hpp"
#include "kpz/interlace/tiling.hpp"
#include "kpz/lpp/lis.hpp"
#include "kpz/lpp/lpp.hpp"
#include "kpz/matrix/gue.hpp"

namespace kpz {

struct ExperimentSpec {
    std::string id;
    std::map<std::string, double> params;
    long replicas = 1;
    std::uint64_t seed = 20080501;
    unsigned workers = 0;
    std::string output;  // report path; empty for none

    double param(const std::string& key, double fallback) const {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    }
};

struct Check {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::string id;
    std::vector<Check> checks;
    double seconds = 0.0;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return !checks.empty();
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["id"] = id;
        j["passed"] = passed();
        j["seconds"] = seconds;
        j["checks"] = nlohmann::json::array();
        for (const auto& c : checks)
            j["checks"].push_back({{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"pass", c.pass}, {"detail", c.detail}});
        return j;
    }
};

struct ExperimentInfo {
    std::string id;
    std::string description;
    long default_replicas = 1;
    std::function<Report(const ExperimentSpec&)> run;
};

namespace detail {

// Replica r draws from Rng(split_seed(seed, r)) and writes slot r only, so
// results do not depend on scheduling.
template <class T, class F>
std::vector<T> replicate(long R, std::uint64_t seed, unsigned workers, F&& f) {
    std::vector<T> out(static_cast<std::size_t>(R));
    parallel_for(static_cast<std::size_t>(R), [&](std::size_t r) {
        Rng rng(split_seed(seed, r));
        out[r] = f(rng);
    }, workers);
    return out;
}

inline Check upper(std::string name, double value, double threshold, std::string detail = {}) {
    return {std::move(name), value, threshold, value <= threshold, std::move(detail)};
}

inline HeightFunction particle_profile(const std::vector<long>& y, long right_room) {
    // particles at y (decreasing); holes elsewhere on [y_N - 1, y_1 + right_room]
    long lo = y.back() - 1, hi = y.front() + right_room + 1;
    HeightFunction h;
    h.origin = lo;
    h.h.assign(static_cast<std::size_t>(hi - lo), 0);
    for (long x = lo; x + 1 < hi; ++x) {
        bool p = std::find(y.begin(), y.end(), x) != y.end();
        h.h[static_cast<std::size_t>(x + 1 - lo)] = h.h[static_cast<std::size_t>(x - lo)] + (p ? -1 : 1);
    }
    return h;
}

// ---- criterion experiments ----

inline Report dual_exact(const ExperimentSpec& s) {
    Report r{"dual-exact", {}, 0.0};
    long nmax = static_cast<long>(s.param("nmax", 8));
    double worst = 0.0;
    std::string where;
    for (double t : {0.5, 1.0, 2.0})
        for (long n = 0; n <= nmax; ++n) {
            double d = std::fabs(png_cdf_toeplitz(n, t) - png_cdf_fredholm_discrete(n, t));
            if (d > worst) {
                worst = d;
                where = "n=" + std::to_string(n) + " t=" + std::to_string(t);
            }
        }
    r.checks.push_back(upper("max |toeplitz - fredholm|", worst, s.param("tol", 1e-8), where));
    return r;
}

inline Report lis_identity(const ExperimentSpec& s) {
    Report r{"lis-identity", {}, 0.0};
    double t = s.param("t", 3.0);
    auto ok = replicate<int>(s.replicas, s.seed, s.workers, [&](Rng& rng) {
        NucleationSet ev = sample_droplet_events(t, Region::droplet_cone, rng);
        long h = png_evolve(ev, t, {0.0})[0];
        std::vector<Nucleation> cone;
        for (const auto& e : ev.events)
            if (std::fabs(e.x) <= t - e.s) cone.push_back(e);
        auto perm = induced_permutation(cone, [](const Nucleation& e) { return e.s + e.x; },
                                        [](const Nucleation& e) { return e.s - e.x; });
        return static_cast<long>(lis_patience(perm)) == h ? 1 : 0;
    });
    long good = std::accumulate(ok.begin(), ok.end(), 0L);
    r.checks.push_back({"height equals LIS", static_cast<double>(good), static_cast<double>(s.replicas), good == s.replicas,
                        std::to_string(good) + "/" + std::to_string(s.replicas)});
    return r;
}

inline Report png_droplet_vs_toeplitz(const ExperimentSpec& s) {
    Report r{"png-droplet-vs-toeplitz", {}, 0.0};
    double t = s.param("t", 5.0);
    auto h = replicate<long>(s.replicas, s.seed, s.workers, [&](Rng& rng) { return png_droplet_sample(t, rng).h0; });
    std::map<long, double> cache;
    auto G = [&](long k) {
        if (k < 0) return 0.0;
        auto it = cache.find(k);
        if (it != cache.end()) return it->second;
        return cache[k] = png_cdf_toeplitz(k, t);
    };
    double ks = ks_distance_lattice(h, G);
    double thr = s.param("ks_coef", 1.63) / std::sqrt(static_cast<double>(s.replicas));
    r.checks.push_back(upper("KS vs Toeplitz CDF", ks, thr, "n=" + std::to_string(s.replicas)));
    return r;
}

// sup_s |P((h - 2t)/t^{1/3} <= s) - F2(s)|: on [s_n, s_{n+1}) the left side
// is the constant P(h <= n) while F2 runs from F2(s_n) to F2(s_{n+1}).
inline double tw_sup_distance(double t, const std::vector<double>& cdf) {
    const double c = std::cbrt(t);
    auto sc = [&](long n) { return (static_cast<double>(n) - 2.0 * t) / c; };
    double d = tw2_cdf(sc(0));
    for (long n = 0; n < static_cast<long>(cdf.size()); ++n)
        d = std::max({d, std::fabs(cdf[static_cast<std::size_t>(n)] - tw2_cdf(sc(n))),
                      std::fabs(cdf[static_cast<std::size_t>(n)] - tw2_cdf(sc(n + 1)))});
    return d;
}

inline Report tracy_widom_trend(const ExperimentSpec& s) {
    Report r{"tracy-widom-trend", {}, 0.0};
    std::vector<double> ts = {s.param("t1", 8.0), s.param("t2", 16.0), s.param("t3", 32.0)};
    std::vector<double> d;
    std::string detail;
    for (double t : ts) {
        long nmax = static_cast<long>(std::ceil(2.0 * t + 8.0 * std::cbrt(t)));
        auto cdf = png_cdf_fredholm_table(nmax, t);
        d.push_back(tw_sup_distance(t, cdf));
        detail += "t=" + std::to_string(static_cast<int>(t)) + ":" + std::to_string(d.back()) + " ";
    }
    bool mono = true;
    for (std::size_t k = 1; k < d.size(); ++k) mono = mono && d[k] < d[k - 1];
    r.checks.push_back({"sup distance decreasing", d.back(), d.front(), mono, detail});
    return r;
}

inline Report schuetz_check(const ExperimentSpec& s) {
    Report r{"schuetz", {}, 0.0};
    struct Case {
        std::vector<long> y;
        double t;
    };
    std::vector<Case> cases = {{{0}, 1.0}, {{0, -1}, 1.0}, {{0, -1, -2}, 0.5}, {{3, 0, -2}, 0.5}};
    double worst_oracle = 0.0, worst_norm = 0.0;
    for (const auto& c : cases) {
        auto dist = schuetz_distribution(c.y, c.t);
        long W = 0;
        while (poisson_tail_bound(W, c.t) > 1e-13) ++W;
        auto orc = master_equation_oracle(c.y, c.t, W, 1e-12);
        double total = 0.0;
        for (const auto& [x, p] : dist) total += p;
        worst_norm = std::max(worst_norm, std::fabs(total - 1.0));
        for (const auto& [x, p] : orc) {
            auto it = dist.find(x);
            double q = it == dist.end() ? schuetz_transition({c.y, x, c.t}) : it->second;
            worst_oracle = std::max(worst_oracle, std::fabs(p - q));
        }
    }
    r.checks.push_back(upper("max |schuetz - oracle|", worst_oracle, s.param("oracle_tol", 1e-6)));
    r.checks.push_back(upper("normalization error", worst_norm, s.param("norm_tol", 1e-8)));
    // Monte Carlo: law of the last particle under tasep_ct_run
    for (std::size_t k = 0; k < cases.size(); ++k) {
        const auto& c = cases[k];
        auto dist = schuetz_distribution(c.y, c.t);
        std::map<long, double> marg;
        for (const auto& [x, p] : dist) marg[x.back()] += p;
        long W = 0;
        while (poisson_tail_bound(W, c.t) > 1e-13) ++W;
        HeightFunction h0 = particle_profile(c.y, W + 2);
        auto last = replicate<long>(s.replicas, split_seed(s.seed, 100 + k), s.workers, [&](Rng& rng) {
            auto tr = tasep_ct_run(h0, c.t, rng);
            return tr.final_state.particles().back();
        });
        auto G = [&](long v) {
            double acc = 0.0;
            for (const auto& [x, p] : marg)
                if (x <= v) acc += p;
            return acc;
        };
        double ks = ks_distance_lattice(last, G);
        r.checks.push_back(upper("MC last particle N=" + std::to_string(c.y.size()) + " case " + std::to_string(k), ks,
                                 ks_threshold_3sigma(static_cast<std::size_t>(s.replicas))));
    }
    return r;
}

inline Report determinantal_marginal_check(const ExperimentSpec& s) {
    Report r{"determinantal-marginal", {}, 0.0};
    double worst = 0.0;
    int count = 0;
    for (std::vector<long> y : {std::vector<long>{0, -1}, {1, -2}, {0, -3}})
        for (double t : {0.5, 1.0, 2.0})
            for (long x1 = y[0]; x1 <= y[0] + 4; ++x1)
                for (long x2 = y[1]; x2 < x1 && x2 <= y[1] + 4; ++x2) {
                    std::vector<long> x = {x1, x2};
                    double a = determinantal_marginal(x, y, t);
                    double b = schuetz_transition({y, x, t});
                    worst = std::max(worst, std::fabs(a - b));
                    ++count;
                }
    r.checks.push_back(upper("max |marginal - schuetz|", worst, s.param("tol", 1e-10), std::to_string(count) + " points"));
    return r;
}

inline Report fredholm_engine(const ExperimentSpec& s) {
    Report r{"fredholm-engine", {}, 0.0};
    double worst = 0.0;
    for (double x = -6.0; x <= 4.0 + 1e-9; x += 0.5) {
        auto op = airy2_operator({0.0}, {x});
        worst = std::max(worst, std::fabs(fredholm_det_fixed(op, 80) - fredholm_det_fixed(op, 40)));
    }
    r.checks.push_back(upper("F2 node doubling", worst, s.param("doubling_tol", 1e-8)));
    AirySettings coarse, fine;
    fine.nodes = 80;
    auto m40 = airy_marginal_moments(AiryProcess::A2, -10.0, 6.0, coarse);
    auto m80 = airy_marginal_moments(AiryProcess::A2, -10.0, 6.0, fine);
    r.checks.push_back(upper("Var(xi2) node doubling", std::fabs(m80.variance - m40.variance), 1e-6,
                             "Var=" + std::to_string(m80.variance) + " mean=" + std::to_string(m80.mean)));
    const double var = m80.variance;
    auto g0 = airy_covariance(AiryProcess::A2, 0.0);
    r.checks.push_back(upper("|g2(0) - Var|", std::fabs(g0.value - var), g0.error + 1e-6, "g2(0)=" + std::to_string(g0.value)));
    auto g01 = airy_covariance(AiryProcess::A2, 0.1);
    r.checks.push_back(upper("|g2(0.1) - (Var - 0.1)|", std::fabs(g01.value - (var - 0.1)), s.param("small_lag_tol", 0.02),
                             "g2(0.1)=" + std::to_string(g01.value)));
    auto g4 = airy_covariance(AiryProcess::A2, 4.0);
    double rel = std::fabs(g4.value - 1.0 / 16.0) / (1.0 / 16.0);
    r.checks.push_back(upper("|g2(4) - 1/16| / (1/16)", rel, s.param("tail_rel_tol", 0.15),
                             "g2(4)=" + std::to_string(g4.value) + " err=" + std::to_string(g4.error)));
    return r;
}

inline Report airy1_side(const ExperimentSpec& s) {
    Report r{"airy1-side", {}, 0.0};
    double t = s.param("t", 20.0);
    auto h = replicate<long>(s.replicas, s.seed, s.workers, [&](Rng& rng) { return png_flat_sample(t, {0.0}, rng)[0]; });
    std::map<long, double> cache;
    auto F = [&](double x) { return xi1_cdf(x); };
    double ks = ks_distance_lattice(h, [&](long k) {
        auto it = cache.find(k);
        if (it != cache.end()) return it->second;
        return cache[k] = F((static_cast<double>(k) + 0.5 - 2.0 * t) / std::cbrt(t));
    });
    r.checks.push_back(upper("KS flat PNG vs xi1", ks, s.param("ks_tol", 0.08)));
    for (double lag : {2.0, 3.0}) {
        auto g1 = airy_covariance(AiryProcess::A1, lag);
        auto g2 = airy_covariance(AiryProcess::A2, lag);
        r.checks.push_back({"|g1| < g2 at lag " + std::to_string(static_cast<int>(lag)), std::fabs(g1.value), g2.value,
                            std::fabs(g1.value) < g2.value,
                            "g1=" + std::to_string(g1.value) + " g2=" + std::to_string(g2.value)});
    }
    return r;
}

inline Report edge_universality(const ExperimentSpec& s) {
    Report r{"edge-universality", {}, 0.0};
    int N = static_cast<int>(s.param("N", 200));
    long samples = static_cast<long>(s.param("samples", 2000));
    auto top = replicate<double>(samples, s.seed, s.workers, [&](Rng& rng) {
        return (sample_gue(N, rng).largest_eigenvalue() - 2.0 * N) / std::cbrt(static_cast<double>(N));
    });
    double ks = ks_distance(make_sample_set("gue-edge", top), [](double x) { return tw2_cdf(x); });
    r.checks.push_back(upper("KS GUE edge vs F2", ks, s.param("ks_tol", 0.1)));
    int n = static_cast<int>(s.param("ou_N", 20));
    double lag = s.param("ou_t", 10.0);
    long pairs = static_cast<long>(s.param("ou_pairs", 100000));
    auto pr = replicate<std::pair<double, double>>(pairs, split_seed(s.seed, 1), s.workers, [&](Rng& rng) {
        auto p = ou_two_time(n, lag, rng);
        return std::make_pair(p.first(0, 0).real(), p.second(0, 0).real());
    });
    std::vector<double> a, b;
    for (auto [u, v] : pr) {
        a.push_back(u);
        b.push_back(v);
    }
    double rho = ou_correlation(n, lag), est = correlation(a, b);
    double sigma = (1.0 - rho * rho) / std::sqrt(static_cast<double>(pairs));
    r.checks.push_back(upper("|corr - exp(-t/2N)| / sigma", std::fabs(est - rho) / sigma, 3.0,
                             "corr=" + std::to_string(est) + " exact=" + std::to_string(rho)));
    return r;
}

inline Report projection_three_way(const ExperimentSpec& s) {
    Report r{"projection-three-way", {}, 0.0};
    long tau = static_cast<long>(s.param("t", 10));
    double p = s.param("p", 0.5);
    int N = static_cast<int>(s.param("N", 5));
    std::vector<int> watch = {1, 3, 5};
    Rng dummy(0);
    HeightFunction wedge = make_initial(InitialCondition::make_wedge(), {-(tau + N + 3), tau + 4}, dummy);
    auto direct = replicate<std::vector<long>>(s.replicas, split_seed(s.seed, 1), s.workers, [&](Rng& rng) {
        auto h = tasep_discrete_run(wedge, 1.0 - p, tau, Update::parallel, rng);
        auto x = h.particles();
        x.resize(static_cast<std::size_t>(N));
        return x;
    });
    auto aztec = replicate<std::vector<long>>(s.replicas, split_seed(s.seed, 2), s.workers, [&](Rng& rng) {
        return aztec_to_tasep(aztec_shuffle_run(N, p, static_cast<int>(tau), rng));
    });
    auto lpp = replicate<std::vector<long>>(s.replicas, split_seed(s.seed, 3), s.workers, [&](Rng& rng) {
        WeightGrid w = sample_weights(WeightLaw::geometric_plus_one(1.0 - p), tau + 1, N, rng);
        return tasep_positions_from_lpp(lpp_table(w, tau + 1, N), static_cast<double>(tau), N);
    });
    auto column = [&](const std::vector<std::vector<long>>& v, int n) {
        std::vector<double> c;
        for (const auto& x : v) c.push_back(static_cast<double>(x[static_cast<std::size_t>(n - 1)]));
        return c;
    };
    const double thr = ks_threshold_3sigma(static_cast<std::size_t>(s.replicas), static_cast<std::size_t>(s.replicas));
    for (int n : watch) {
        auto a = column(direct, n), b = column(aztec, n), c = column(lpp, n);
        std::string tag = "x_" + std::to_string(n);
        r.checks.push_back(upper(tag + " direct vs aztec", ks_two_sample(a, b), thr));
        r.checks.push_back(upper(tag + " direct vs lpp", ks_two_sample(a, c), thr));
        r.checks.push_back(upper(tag + " aztec vs lpp", ks_two_sample(b, c), thr));
    }
    return r;
}

inline Report aztec_uniformity(const ExperimentSpec& s) {
    Report r{"aztec-uniformity", {}, 0.0};
    int order = static_cast<int>(s.param("order", 2));
    auto keys = replicate<std::string>(s.replicas, s.seed, s.workers, [&](Rng& rng) {
        return tiling_key(render_domino(aztec_shuffle_run(order, 0.5, order, rng)));
    });
    std::map<std::string, long> counts;
    for (const auto& k : keys) ++counts[k];
    long expected = 1L << (order * (order + 1) / 2);
    r.checks.push_back({"distinct tilings", static_cast<double>(counts.size()), static_cast<double>(expected),
                        static_cast<long>(counts.size()) == expected, {}});
    std::vector<long> c;
    for (const auto& [k, v] : counts) c.push_back(v);
    while (static_cast<long>(c.size()) < expected) c.push_back(0);
    auto chi = chi_square_uniform(c, s.param("alpha", 0.01));
    r.checks.push_back({"chi-square", chi.statistic, chi.critical, chi.pass, "dof=" + std::to_string(chi.dof)});
    return r;
}

// Non-crossing lambda_{j-1}(x) < lambda_j(x) at every step position and just
// beyond it, pinning lambda_j(+-t) = j.
inline long line_ensemble_violations(const LineEnsemble& le) {
    long bad = 0;
    std::vector<double> xs = {-le.time, le.time};
    for (const auto& l : le.lines)
        for (const auto& st : l.steps) {
            xs.push_back(st.position);
            xs.push_back(std::nextafter(st.position, 1e300));
        }
    long J = static_cast<long>(le.lines.size());
    for (long j = 0; j > -J; --j) {
        for (double x : xs)
            if (!(le.height(j - 1, x) < le.height(j, x))) ++bad;
        if (le.height(j, -le.time) != j || le.height(j, le.time) != j) ++bad;
    }
    return bad;
}

inline Report invariants(const ExperimentSpec& s) {
    Report r{"invariants", {}, 0.0};
    long R = s.replicas;
    auto tasep_bad = replicate<long>(R, split_seed(s.seed, 1), s.workers, [&](Rng& rng) {
        long bad = 0;
        double m = rng.uniform(-0.9, 0.9);
        HeightFunction h = make_initial(InitialCondition::make_bernoulli(m), {-20, 21}, rng);
        HeightFunction flatp = make_initial(InitialCondition::make_flat(), {0, 40}, rng, Boundary::periodic);
        for (auto* start : {&h, &flatp}) {
            HeightFunction a = *start, b = *start;
            for (int k = 0; k < 30; ++k) {
                a = tasep_parallel_step(a, 0.4, rng);
                b = tasep_sequential_step(b, 0.4, rng);
                bad += !a.admissible() + !b.admissible();
            }
            auto tr = tasep_ct_run(*start, 5.0, rng);
            HeightFunction c = tr.initial;
            for (const auto& e : tr.events) {
                c.h[static_cast<std::size_t>(e.site - c.origin)] += 2;
                bad += !c.admissible();
            }
        }
        return bad;
    });
    auto inter_bad = replicate<long>(R, split_seed(s.seed, 2), s.workers, [&](Rng& rng) {
        long bad = 0;
        interlace_ct_run(interlace_init(8), 4.0, rng, [&](const InterlacedArray& a, const InterlaceEvent&) { bad += !a.interlaced(); });
        aztec_shuffle_run(8, 0.5, 12, rng, [&](const AztecArray& a) { bad += !a.interlaced(); });
        return bad;
    });
    auto line_bad = replicate<long>(R, split_seed(s.seed, 3), s.workers, [&](Rng& rng) {
        double t = 4.0;
        NucleationSet ev = sample_droplet_events(t, Region::droplet_cone, rng);
        LineEnsemble le = png_multiline(ev, t);
        long bad = line_ensemble_violations(le);
        std::vector<double> xs;
        for (double x = -t; x <= t; x += 0.37) xs.push_back(x);
        auto top = png_evolve(ev, t, xs);
        for (std::size_t k = 0; k < xs.size(); ++k) bad += top[k] != le.height(0, xs[k]);
        return bad;
    });
    auto total = [](const std::vector<long>& v) { return static_cast<double>(std::accumulate(v.begin(), v.end(), 0L)); };
    r.checks.push_back(upper("TASEP admissibility violations", total(tasep_bad), 0.0));
    r.checks.push_back(upper("interlacing violations", total(inter_bad), 0.0));
    r.checks.push_back(upper("line ensemble violations", total(line_bad), 0.0));
    return r;
}

inline Report slow_decorrelation(const ExperimentSpec& s) {
    Report r{"slow-decorrelation", {}, 0.0};
    double t = s.param("t", 10.0), zeta = s.param("zeta", 3.0);
    double t2 = 1.4 * t, xd = 2.0 * std::pow(t, 2.0 / 3.0) * zeta;
    auto v = replicate<std::vector<double>>(s.replicas, s.seed, s.workers, [&](Rng& rng) {
        NucleationSet ev = sample_flat_events(t2, -t2 - 1e-9, xd + t2 + 1e-9, rng);
        long a = png_evolve(ev, t, {0.0})[0];
        auto b = png_evolve(ev, t2, {0.0, xd});
        return std::vector<double>{static_cast<double>(a), static_cast<double>(b[0]), static_cast<double>(b[1])};
    });
    std::vector<double> a, b, c;
    for (const auto& x : v) {
        a.push_back(x[0]);
        b.push_back(x[1]);
        c.push_back(x[2]);
    }
    double same = correlation(a, b), shifted = correlation(a, c);
    r.checks.push_back({"corr along time > corr across space", same, shifted, same > shifted,
                        "corr(h(0,t),h(0,1.4t))=" + std::to_string(same) + " corr(h(0,t),h(x,1.4t))=" + std::to_string(shifted)});
    return r;
}

} // namespace detail

inline const std::vector<ExperimentInfo>& experiment_registry() {
    static const std::vector<ExperimentInfo> reg = {
        {"dual-exact", "Toeplitz and discrete Fredholm CDFs agree", 1, detail::dual_exact},
        {"lis-identity", "PNG droplet height equals the LIS of the induced permutation", 100, detail::lis_identity},
        {"png-droplet-vs-toeplitz", "Poissonized PNG droplet sample against the exact CDF", 100000, detail::png_droplet_vs_toeplitz},
        {"tracy-widom-trend", "finite-t droplet CDF approaches F2", 1, detail::tracy_widom_trend},
        {"schuetz", "transition probabilities against the forward equation and simulation", 100000, detail::schuetz_check},
        {"determinantal-marginal", "summed determinantal weights reproduce transition probabilities", 1,
         detail::determinantal_marginal_check},
        {"fredholm-engine", "F2 stability and Airy2 covariance checks", 1, detail::fredholm_engine},
        {"airy1-side", "flat PNG against xi1 and Airy1 decorrelation", 10000, detail::airy1_side},
        {"edge-universality", "GUE edge against F2 and the OU two-time correlation", 1, detail::edge_universality},
        {"projection-three-way", "parallel TASEP from simulation, Aztec projection and LPP", 100000, detail::projection_three_way},
        {"aztec-uniformity", "shuffling at q=1/2 samples uniform tilings", 100000, detail::aztec_uniformity},
        {"invariants", "structural invariants after every transition", 200, detail::invariants},
        {"slow-decorrelation", "flat PNG decorrelates slower along time than across space", 4000, detail::slow_decorrelation},
    };
    return reg;
}

inline const ExperimentInfo& find_experiment(const std::string& id) {
    for (const auto& e : experiment_registry())
        if (e.id == id) return e;
    throw InvalidParameter("unknown experiment id: " + id);
}

inline ExperimentSpec default_spec(const std::string& id) {
    ExperimentSpec s;
    s.id = id;
    s.replicas = find_experiment(id).default_replicas;
    return s;
}

inline Report run_experiment(const ExperimentSpec& spec) {
    const auto& info = find_experiment(spec.id);
    if (spec.replicas < 1) throw InvalidParameter("replica count must be at least 1");
    auto t0 = std::chrono::steady_clock::now();
    Report r = info.run(spec);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!spec.output.empty()) {
        std::ofstream f(spec.output);
        if (!f) throw Error("cannot write report to " + spec.output);
        f << r.to_json().dump(2) << '\n';
    }
    return r;
}

inline ExperimentSpec spec_from_json(const nlohmann::json& j) {
    ExperimentSpec s = default_spec(j.at("id").get<std::string>());
    if (j.contains("replicas")) s.replicas = j["replicas"].get<long>();
    if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("workers")) s.workers = j["workers"].get<unsigned>();
    if (j.contains("output")) s.output = j["output"].get<std::string>();
    if (j.contains("params"))
        for (auto& [k, v] : j["params"].items()) s.params[k] = v.get<double>();
    return s;
}

} // namespace kpz
