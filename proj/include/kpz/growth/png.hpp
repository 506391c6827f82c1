#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <queue>
#include <tuple>
#include <vector>

#include "kpz/core/error.hpp"
#include "kpz/core/random.hpp"

namespace kpz {

struct Nucleation {
    double x;
    double s;
};

// droplet_quadrant: |x| <= s and |x| <= t - s, the backward cone of (0,t)
//   inside the droplet; enough for h(0,t) only.
// droplet_cone: |x| <= s <= t, the whole droplet; any query |x| <= t.
// flat_window: [xlo, xhi] x [0,t].
enum class Region { droplet_quadrant, droplet_cone, flat_window };

struct NucleationSet {
    std::vector<Nucleation> events;
    double intensity = 2.0;
    Region region = Region::droplet_cone;
    double t = 0.0;
    double xlo = 0.0, xhi = 0.0;
};

struct PngStep {
    double position;
    bool up;
};

// Piecewise constant profile: baseline at -infinity plus sorted steps.
struct PngState {
    long baseline = 0;
    double time = 0.0;
    std::vector<PngStep> steps;

    long height(double x) const {
        long h = baseline;
        for (const auto& st : steps) {
            if (st.position >= x) break;
            h += st.up ? 1 : -1;
        }
        return h;
    }
};

namespace detail {

// Event-driven PNG over one or several lines. Up-steps move left and
// down-steps move right at unit speed, so each step is described by a
// constant label: up at label - s, down at label + s. A down-step followed
// by an up-step closes the gap between them at s = (a - b)/2.
class PngEngine {
public:
    PngEngine(bool multiline) : multiline_(multiline) {}

    void add_nucleation(double x, double s, int line = 0) { push({s, line, x, 0, -1, -1}); }

    void run(double t) {
        while (!pq_.empty() && pq_.top().s <= t) {
            Event e = pq_.top();
            pq_.pop();
            if (e.kind == 0) nucleate(e.line, e.x, e.s);
            else collide(e);
        }
        now_ = t;
    }

    int lines() const { return static_cast<int>(lines_.size()); }

    PngState state(int line, double t) const {
        PngState st;
        st.baseline = -line;
        st.time = t;
        if (line >= lines()) return st;
        const Line& L = lines_[static_cast<std::size_t>(line)];
        for (int id = L.head; id >= 0; id = L.nodes[static_cast<std::size_t>(id)].next) {
            const Node& nd = L.nodes[static_cast<std::size_t>(id)];
            st.steps.push_back({pos(nd, t), nd.up});
        }
        return st;
    }

    long annihilations() const { return annihilations_; }

private:
    struct Node {
        double label;
        bool up;
        int prev, next;
        bool alive;
    };
    struct Line {
        std::vector<Node> nodes;
        int head = -1;
    };
    struct Event {
        double s;
        int line;
        double x;
        int kind;  // 0 nucleation, 1 collision
        int a, b;
        bool operator>(const Event& o) const {
            return std::tie(s, line, x, kind) > std::tie(o.s, o.line, o.x, o.kind);
        }
    };

    static double pos(const Node& n, double s) { return n.up ? n.label - s : n.label + s; }

    void push(const Event& e) { pq_.push(e); }

    Line& line(int j) {
        while (static_cast<int>(lines_.size()) <= j) lines_.emplace_back();
        return lines_[static_cast<std::size_t>(j)];
    }

    void schedule(int j, int a, int b) {
        if (a < 0 || b < 0) return;
        Line& L = lines_[static_cast<std::size_t>(j)];
        const Node& na = L.nodes[static_cast<std::size_t>(a)];
        const Node& nb = L.nodes[static_cast<std::size_t>(b)];
        if (na.up || !nb.up) return;
        double s = (nb.label - na.label) / 2.0;
        double x = (nb.label + na.label) / 2.0;
        push({s, j, x, 1, a, b});
    }

    void nucleate(int j, double x, double s) {
        Line& L = line(j);
        int prev = -1, cur = L.head;
        while (cur >= 0 && pos(L.nodes[static_cast<std::size_t>(cur)], s) < x) {
            prev = cur;
            cur = L.nodes[static_cast<std::size_t>(cur)].next;
        }
        int u = static_cast<int>(L.nodes.size());
        int d = u + 1;
        L.nodes.push_back({x + s, true, prev, d, true});
        L.nodes.push_back({x - s, false, u, cur, true});
        if (prev >= 0) L.nodes[static_cast<std::size_t>(prev)].next = u;
        else L.head = u;
        if (cur >= 0) L.nodes[static_cast<std::size_t>(cur)].prev = d;
        schedule(j, prev, u);
        schedule(j, d, cur);
    }

    void collide(const Event& e) {
        Line& L = lines_[static_cast<std::size_t>(e.line)];
        Node& a = L.nodes[static_cast<std::size_t>(e.a)];
        Node& b = L.nodes[static_cast<std::size_t>(e.b)];
        if (!a.alive || !b.alive || a.next != e.b) return;
        a.alive = b.alive = false;
        int p = a.prev, n = b.next;
        if (p >= 0) L.nodes[static_cast<std::size_t>(p)].next = n;
        else L.head = n;
        if (n >= 0) L.nodes[static_cast<std::size_t>(n)].prev = p;
        ++annihilations_;
        schedule(e.line, p, n);
        if (multiline_) push({e.s, e.line + 1, e.x, 0, -1, -1});
    }

    bool multiline_;
    std::vector<Line> lines_;
    std::priority_queue<Event, std::vector<Event>, std::greater<Event>> pq_;
    double now_ = 0.0;
    long annihilations_ = 0;
};

inline void check_queries(const NucleationSet& ev, double t, const std::vector<double>& xs) {
    const double eps = 1e-12;
    for (double x : xs) {
        switch (ev.region) {
        case Region::droplet_quadrant:
            if (std::fabs(x) > eps) throw OutOfWindow("quadrant event set only determines h(0,t)");
            if (t > ev.t + eps) throw OutOfWindow("query time beyond sampled region");
            break;
        case Region::droplet_cone:
            if (t > ev.t + eps) throw OutOfWindow("query time beyond sampled region");
            break;
        case Region::flat_window:
            if (x - t < ev.xlo - eps || x + t > ev.xhi + eps || t > ev.t + eps)
                throw OutOfWindow("query outside the simulated light cone");
            break;
        }
    }
}

} // namespace detail

inline PngState png_state(const NucleationSet& ev, double t) {
    detail::PngEngine eng(false);
    for (const auto& e : ev.events)
        if (e.s <= t) eng.add_nucleation(e.x, e.s);
    eng.run(t);
    return eng.state(0, t);
}

inline std::vector<long> png_evolve(const NucleationSet& ev, double t, const std::vector<double>& xs) {
    if (!(t >= 0.0)) throw InvalidParameter("t must be nonnegative");
    detail::check_queries(ev, t, xs);
    PngState st = png_state(ev, t);
    std::vector<long> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back(st.height(x));
    return out;
}

inline NucleationSet sample_droplet_events(double t, Region region, Rng& rng, double intensity = 2.0) {
    if (!(t > 0.0)) throw InvalidParameter("t must be positive");
    NucleationSet ev;
    ev.t = t;
    ev.region = region;
    ev.intensity = intensity;
    ev.xlo = -t;
    ev.xhi = t;
    // light-cone coordinates u = s + x, v = s - x; dx ds = du dv / 2
    if (region == Region::droplet_quadrant) {
        long n = rng.poisson(intensity * t * t / 2.0);
        for (long k = 0; k < n; ++k) {
            double u = rng.uniform(0.0, t), v = rng.uniform(0.0, t);
            ev.events.push_back({(u - v) / 2.0, (u + v) / 2.0});
        }
    } else if (region == Region::droplet_cone) {
        long n = rng.poisson(intensity * t * t);
        for (long k = 0; k < n; ++k) {
            double u, v;
            do {
                u = rng.uniform(0.0, 2.0 * t);
                v = rng.uniform(0.0, 2.0 * t);
            } while (u + v > 2.0 * t);
            ev.events.push_back({(u - v) / 2.0, (u + v) / 2.0});
        }
    } else {
        throw InvalidParameter("not a droplet region");
    }
    std::sort(ev.events.begin(), ev.events.end(), [](auto& a, auto& b) { return a.s < b.s; });
    return ev;
}

struct DropletSample {
    NucleationSet events;
    long h0 = 0;
    std::vector<double> xs;
    std::vector<long> heights;
};

// With an empty grid only the quadrant below (0,t) is sampled.
inline DropletSample png_droplet_sample(double t, Rng& rng, const std::vector<double>& xs = {}) {
    DropletSample out;
    out.events = sample_droplet_events(t, xs.empty() ? Region::droplet_quadrant : Region::droplet_cone, rng);
    PngState st = png_state(out.events, t);
    out.h0 = st.height(0.0);
    out.xs = xs;
    for (double x : xs) out.heights.push_back(st.height(x));
    return out;
}

inline NucleationSet sample_flat_events(double t, double xlo, double xhi, Rng& rng, double intensity = 2.0) {
    NucleationSet ev;
    ev.region = Region::flat_window;
    ev.t = t;
    ev.xlo = xlo;
    ev.xhi = xhi;
    ev.intensity = intensity;
    long n = rng.poisson(intensity * (xhi - xlo) * t);
    for (long k = 0; k < n; ++k) ev.events.push_back({rng.uniform(xlo, xhi), rng.uniform(0.0, t)});
    std::sort(ev.events.begin(), ev.events.end(), [](auto& a, auto& b) { return a.s < b.s; });
    return ev;
}

inline std::vector<long> png_flat_sample(double t, const std::vector<double>& xs, Rng& rng) {
    if (!(t > 0.0)) throw InvalidParameter("t must be positive");
    if (xs.empty()) return {};
    const double eps = 1e-9;
    auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    NucleationSet ev = sample_flat_events(t, *lo - t - eps, *hi + t + eps, rng);
    return png_evolve(ev, t, xs);
}

// Line j = 0, -1, -2, ... is stored at index -j; lines with index below j0
// never left their initial value j.
struct LineEnsemble {
    std::vector<PngState> lines;
    long j0 = 0;
    double time = 0.0;

    long height(long j, double x) const {
        if (j > 0) throw InvalidQuery("line index must be <= 0");
        std::size_t k = static_cast<std::size_t>(-j);
        if (k >= lines.size()) return j;
        return lines[k].height(x);
    }
};

inline LineEnsemble png_multiline(const NucleationSet& ev, double t) {
    if (ev.region == Region::flat_window) throw InvalidParameter("line ensemble needs droplet events");
    detail::PngEngine eng(true);
    for (const auto& e : ev.events)
        if (e.s <= t) eng.add_nucleation(e.x, e.s, 0);
    eng.run(t);
    LineEnsemble le;
    le.time = t;
    for (int k = 0; k < eng.lines(); ++k) le.lines.push_back(eng.state(k, t));
    le.j0 = -static_cast<long>(le.lines.size());
    return le;
}

} // namespace kpz
