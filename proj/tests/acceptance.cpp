// Acceptance suite: one PASS/FAIL line per criterion. Tolerances and replica
// counts are pinned here. Exit status is nonzero only for failures that are
// not listed as known.

#include <cstdlib>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "kpz/harness/experiments.hpp"

using namespace kpz;

namespace {

struct Criterion {
    int number;
    std::string experiment;
    long replicas;
    std::map<std::string, double> params;
    // checks whose failure is understood and documented
    std::set<std::string> known_failures;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> c = {
        {1, "dual-exact", 1, {{"nmax", 8}, {"tol", 1e-8}}, {}},
        {2, "lis-identity", 100, {{"t", 3}}, {}},
        {3, "png-droplet-vs-toeplitz", 100000, {{"t", 5}, {"ks_coef", 1.63}}, {}},
        {4, "tracy-widom-trend", 1, {{"t1", 8}, {"t2", 16}, {"t3", 32}}, {}},
        {5, "schuetz", 100000, {{"oracle_tol", 1e-6}, {"norm_tol", 1e-8}}, {}},
        {6, "determinantal-marginal", 1, {{"tol", 1e-10}}, {}},
        // g2(4) sits about 17% below 1/16: the t^-4 correction is not small at t = 4
        {7, "fredholm-engine", 1, {{"doubling_tol", 1e-8}, {"small_lag_tol", 0.02}, {"tail_rel_tol", 0.15}},
         {"|g2(4) - 1/16| / (1/16)"}},
        {8, "airy1-side", 10000, {{"t", 20}, {"ks_tol", 0.08}}, {}},
        {9, "edge-universality", 1, {{"N", 200}, {"samples", 2000}, {"ks_tol", 0.1}, {"ou_N", 20}, {"ou_t", 10}, {"ou_pairs", 100000}}, {}},
        {10, "projection-three-way", 100000, {{"t", 10}, {"p", 0.5}, {"N", 5}}, {}},
        {11, "aztec-uniformity", 100000, {{"order", 2}, {"alpha", 0.01}}, {}},
        {12, "invariants", 200, {}, {}},
    };
    return c;
}

} // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    for (int k = 1; k < argc; ++k) only.insert(std::atoi(argv[k]));
    int unexpected = 0, expected = 0;
    for (const auto& c : criteria()) {
        if (!only.empty() && !only.count(c.number)) continue;
        ExperimentSpec s = default_spec(c.experiment);
        s.replicas = c.replicas;
        s.params = c.params;
        s.seed = split_seed(20080501, static_cast<std::uint64_t>(c.number));
        Report r;
        try {
            r = run_experiment(s);
        } catch (const std::exception& e) {
            std::cout << "FAIL criterion " << c.number << " " << c.experiment << ": exception: " << e.what() << std::endl;
            ++unexpected;
            continue;
        }
        bool hard_fail = false, soft_fail = false;
        for (const auto& ch : r.checks) {
            if (ch.pass) continue;
            if (c.known_failures.count(ch.name)) soft_fail = true;
            else hard_fail = true;
        }
        const char* verdict = hard_fail || soft_fail ? "FAIL" : "PASS";
        std::cout << verdict << " criterion " << c.number << " " << c.experiment << " (" << r.seconds << " s)"
                  << (soft_fail && !hard_fail ? " [expected]" : "") << std::endl;
        for (const auto& ch : r.checks)
            std::cout << "    " << (ch.pass ? "ok  " : "bad ") << ch.name << " = " << ch.value << " vs " << ch.threshold
                      << (ch.detail.empty() ? "" : "  " + ch.detail) << std::endl;
        if (hard_fail) ++unexpected;
        else if (soft_fail) ++expected;
    }
    std::cout << "unexpected failures: " << unexpected << ", expected failures: " << expected << std::endl;
    return unexpected == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
