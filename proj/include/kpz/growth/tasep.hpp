#pragma once

#include <cassert>
#include <queue>
#include <utility>
#include <vector>

#include "kpz/core/error.hpp"
#include "kpz/core/random.hpp"
#include "kpz/growth/height.hpp"

namespace kpz {

enum class Update { parallel, sequential };

namespace detail {
inline void check_q(double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidParameter("q must lie in [0,1]");
}
} // namespace detail

// Parallel update: all local minima of the current profile are raised by 2,
// independently with probability 1-q. Coins are drawn left to right.
inline HeightFunction tasep_parallel_step(const HeightFunction& h, double q, Rng& rng) {
    detail::check_q(q);
    HeightFunction out = h;
    for (std::size_t k = 0; k < h.size(); ++k)
        if (h.is_local_min(k) && rng.bernoulli(1.0 - q)) out.h[k] += 2;
    out.time = h.time + 1;
    assert(out.admissible());
    return out;
}

// Sequential update: sites are visited right to left, so a particle may move
// into a site vacated earlier in the same sweep.
inline HeightFunction tasep_sequential_step(const HeightFunction& h, double q, Rng& rng) {
    detail::check_q(q);
    HeightFunction out = h;
    for (std::size_t k = h.size(); k-- > 0;)
        if (out.is_local_min(k) && rng.bernoulli(1.0 - q)) out.h[k] += 2;
    out.time = h.time + 1;
    assert(out.admissible());
    return out;
}

inline HeightFunction tasep_discrete_run(const HeightFunction& h0, double q, long steps, Update u, Rng& rng) {
    detail::check_q(q);
    if (steps < 0) throw InvalidParameter("steps must be nonnegative");
    HeightFunction h = h0;
    for (long s = 0; s < steps; ++s)
        h = u == Update::parallel ? tasep_parallel_step(h, q, rng) : tasep_sequential_step(h, q, rng);
    return h;
}

struct TasepEvent {
    double time;
    long site;
};

// Continuous-time run. Stores the initial profile and the ordered list of
// growth events; any intermediate profile is recovered with at().
struct CtTrajectory {
    HeightFunction initial;
    std::vector<TasepEvent> events;
    HeightFunction final_state;

    HeightFunction at(double t) const {
        HeightFunction h = initial;
        for (const auto& e : events) {
            if (e.time > t) break;
            h.h[static_cast<std::size_t>(e.site - h.origin)] += 2;
        }
        h.time = t;
        return h;
    }
};

// Each local minimum carries an exponential(1) clock. A clock is discarded
// whenever its site stops being a minimum and a fresh one is drawn when a
// site becomes a minimum; by memorylessness this is the exact process.
inline CtTrajectory tasep_ct_run(const HeightFunction& h0, double t_end, Rng& rng) {
    if (!(t_end >= 0.0)) throw InvalidParameter("t_end must be nonnegative");
    CtTrajectory tr;
    tr.initial = h0;
    HeightFunction h = h0;
    const std::size_t n = h.size();
    std::vector<unsigned> version(n, 0);
    using Item = std::pair<double, std::pair<std::size_t, unsigned>>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    double now = h0.time;
    auto arm = [&](std::size_t k) {
        ++version[k];
        if (h.is_local_min(k)) pq.push({now + rng.exponential(1.0), {k, version[k]}});
    };
    for (std::size_t k = 0; k < n; ++k)
        if (h.is_local_min(k)) pq.push({now + rng.exponential(1.0), {k, version[k]}});
    const double t_stop = h0.time + t_end;
    while (!pq.empty()) {
        auto [when, kv] = pq.top();
        if (when > t_stop) break;
        pq.pop();
        auto [k, v] = kv;
        if (v != version[k]) continue;
        now = when;
        h.h[k] += 2;
        assert(h.admissible());
        tr.events.push_back({now, h.origin + static_cast<long>(k)});
        ++version[k];
        if (h.boundary == Boundary::periodic) {
            arm((k + n - 1) % n);
            arm((k + 1) % n);
        } else {
            if (k > 0) arm(k - 1);
            if (k + 1 < n) arm(k + 1);
        }
    }
    h.time = t_stop;
    tr.final_state = h;
    return tr;
}

} // namespace kpz
