#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "kpz/core/error.hpp"
#include "kpz/interlace/array.hpp"
#include "kpz/interlace/aztec.hpp"

namespace kpz {

struct Facet {
    std::string kind;
    std::vector<std::pair<double, double>> polygon;  // plane coordinates
    std::vector<std::tuple<int, int, int>> cells;    // covered unit cells (tag, a, b)
};

struct TilingDocument {
    std::string shape;  // "lozenge" or "domino"
    std::vector<Facet> facets;
    std::set<std::tuple<int, int, int>> region;

    // every region cell covered exactly once
    bool exact_cover() const {
        std::set<std::tuple<int, int, int>> seen;
        for (const auto& f : facets)
            for (const auto& c : f.cells) {
                if (!region.count(c)) return false;
                if (!seen.insert(c).second) return false;
            }
        return seen.size() == region.size();
    }

    std::size_t count(const std::string& kind) const {
        return static_cast<std::size_t>(std::count_if(facets.begin(), facets.end(), [&](const Facet& f) { return f.kind == kind; }));
    }
};

// Lozenge tiling of the trapezoid made of strips 0..N-1 of the triangular
// lattice. Line k carries the edges e in [0, R+k); the particle x_i^n sits on
// edge e = x_i^n + n of line n and is the vertical lozenge across that line
// (clipped to its lower half on the top line N). In strip k the holes of line
// k and line k+1, sorted, pair off with e' - e in {0, 1}: "left" or "right".
// Lattice vertex (j, k) is drawn at (j + k/2, k sqrt(3)/2), j = e - k.
inline TilingDocument render_lozenge(const InterlacedArray& s, int R) {
    if (!s.interlaced()) throw InvalidInput("malformed interlaced array");
    if (R < 1) throw InvalidParameter("window width must be positive");
    const int N = s.N;
    const double h = std::sqrt(3.0) / 2.0;
    auto P = [&](int j, int k) { return std::make_pair(j + 0.5 * k, k * h); };
    enum { UP = 0, DOWN = 1 };
    TilingDocument doc;
    doc.shape = "lozenge";
    // cell tags: UP/DOWN triangle, a = j, b = strip k
    for (int k = 0; k < N; ++k) {
        for (int j = -k; j < R; ++j) doc.region.insert({UP, j, k});
        for (int j = -k - 1; j < R; ++j) doc.region.insert({DOWN, j, k});
    }
    std::vector<std::vector<char>> occ(static_cast<std::size_t>(N + 1));
    occ[0].assign(static_cast<std::size_t>(R), 0);
    for (int n = 1; n <= N; ++n) {
        occ[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(R + n), 0);
        for (int i = 1; i <= n; ++i) {
            long e = s.at(i, n) + n;
            if (e < 0 || e >= R + n) throw OutOfWindow("particle outside the rendering window");
            occ[static_cast<std::size_t>(n)][static_cast<std::size_t>(e)] = 1;
            int j = static_cast<int>(e) - n;
            Facet f;
            f.kind = "vertical";
            if (n < N) {
                f.polygon = {P(j + 1, n - 1), P(j + 1, n), P(j, n + 1), P(j, n)};
                f.cells = {{DOWN, j, n - 1}, {UP, j, n}};
            } else {
                f.polygon = {P(j + 1, n - 1), P(j + 1, n), P(j, n)};
                f.cells = {{DOWN, j, n - 1}};
            }
            doc.facets.push_back(f);
        }
    }
    for (int k = 0; k < N; ++k) {
        std::vector<int> lo, hi;
        for (int e = 0; e < R + k; ++e)
            if (!occ[static_cast<std::size_t>(k)][static_cast<std::size_t>(e)]) lo.push_back(e);
        for (int e = 0; e < R + k + 1; ++e)
            if (!occ[static_cast<std::size_t>(k + 1)][static_cast<std::size_t>(e)]) hi.push_back(e);
        if (lo.size() != hi.size()) throw InvalidInput("hole count mismatch between lines");
        for (std::size_t a = 0; a < lo.size(); ++a) {
            int d = hi[a] - lo[a];
            int j = lo[a] - k;
            Facet f;
            if (d == 0) {
                f.kind = "left";
                f.polygon = {P(j, k), P(j + 1, k), P(j, k + 1), P(j - 1, k + 1)};
                f.cells = {{UP, j, k}, {DOWN, j - 1, k}};
            } else if (d == 1) {
                f.kind = "right";
                f.polygon = {P(j, k), P(j + 1, k), P(j + 1, k + 1), P(j, k + 1)};
                f.cells = {{UP, j, k}, {DOWN, j, k}};
            } else {
                throw InvalidInput("holes do not pair; array is not interlaced");
            }
            doc.facets.push_back(f);
        }
    }
    if (!doc.exact_cover()) throw InvalidInput("lozenges do not tile the region");
    return doc;
}

// Domino tiling of the order-t Aztec diamond from the array after step t
// (t <= N), built from the current and previous positions of levels 1..t.
// Cells are unit squares (a, b) with |a + 1/2| + |b + 1/2| <= t; kinds follow
// the checkerboard colour of the lower-left cell: N/S horizontal, E/W vertical.
inline TilingDocument render_domino(const AztecArray& az) {
    const int n = az.t;
    if (n < 1 || n > az.N) throw InvalidInput("domino rendering needs 1 <= steps <= N");
    if (!az.interlaced()) throw InvalidInput("malformed Aztec array");
    TilingDocument doc;
    doc.shape = "domino";
    for (int a = -n; a < n; ++a)
        for (int b = -n; b < n; ++b)
            if (std::fabs(a + 0.5) + std::fabs(b + 0.5) <= n) doc.region.insert({0, a, b});
    auto cell = [](int u, int v) {
        if (((u - v - 1) % 2 + 2) % 2 != 0) throw InvalidInput("parity error in domino rendering");
        return std::make_tuple(0, (u - v - 1) / 2, (u + v - 1) / 2);
    };
    auto level = [&](const std::vector<std::vector<long>>& src, int k) {
        return src[static_cast<std::size_t>(k - 1)];
    };
    auto add = [&](const std::string& kind, std::tuple<int, int, int> c1, std::tuple<int, int, int> c2) {
        Facet f;
        f.kind = kind;
        f.cells = {c1, c2};
        int a = std::min(std::get<1>(c1), std::get<1>(c2)), b = std::min(std::get<2>(c1), std::get<2>(c2));
        int A = std::max(std::get<1>(c1), std::get<1>(c2)) + 1, B = std::max(std::get<2>(c1), std::get<2>(c2)) + 1;
        f.polygon = {{a, b}, {A, b}, {A, B}, {a, B}};
        doc.facets.push_back(f);
    };
    std::vector<long> init;
    for (int i = 0; i < n; ++i) init.push_back(i);
    auto before = [&](int k) { return k < n ? level(az.prev, k) : init; };
    for (int k = 1; k <= n; ++k) {
        auto A = level(az.z, k);
        auto B = before(k);
        int u = -n + 2 * k - 1;
        for (std::size_t p = 0; p < A.size(); ++p) {
            int v = static_cast<int>(2 * A[p] - n);
            if (A[p] == B[p]) add("E", cell(u, v), cell(u + 1, v + 1));
            else if (A[p] == B[p] + 1) add("N", cell(u, v), cell(u + 1, v - 1));
            else throw InvalidInput("particle moved by more than one step");
        }
    }
    for (int k = 0; k < n; ++k) {
        std::vector<long> B = k == 0 ? std::vector<long>{} : before(k);
        std::vector<long> A = level(az.z, k + 1);
        std::vector<int> bc, ac;
        for (int hh = 0; hh < n; ++hh)
            if (std::find(B.begin(), B.end(), hh) == B.end()) bc.push_back(hh);
        for (int hh = 0; hh <= n; ++hh)
            if (std::find(A.begin(), A.end(), hh) == A.end()) ac.push_back(hh);
        if (bc.size() != ac.size()) throw InvalidInput("hole count mismatch");
        int u = -n + 2 * k;
        for (std::size_t p = 0; p < bc.size(); ++p) {
            int v = 2 * bc[p] - n + 1;
            if (ac[p] == bc[p]) add("S", cell(u, v), cell(u + 1, v - 1));
            else if (ac[p] == bc[p] + 1) add("W", cell(u, v), cell(u + 1, v + 1));
            else throw InvalidInput("holes do not pair");
        }
    }
    if (!doc.exact_cover()) throw InvalidInput("dominoes do not tile the diamond");
    return doc;
}

// canonical key of a tiling: sorted cell pairs
inline std::string tiling_key(const TilingDocument& d) {
    std::vector<std::string> parts;
    for (const auto& f : d.facets) {
        std::ostringstream os;
        auto c = f.cells;
        std::sort(c.begin(), c.end());
        for (const auto& [g, a, b] : c) os << g << ':' << a << ':' << b << ';';
        parts.push_back(os.str());
    }
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (const auto& p : parts) out += p + '|';
    return out;
}

inline std::string tiling_svg(const TilingDocument& d, double unit = 20.0) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& f : d.facets)
        for (const auto& [x, y] : f.polygon) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (d.facets.empty()) xmin = xmax = ymin = ymax = 0.0;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (xmax - xmin) * unit + 2 << "\" height=\""
       << (ymax - ymin) * unit + 2 << "\">\n";
    os << "<style>.left{fill:#d9a441}.right{fill:#4f7cac}.vertical{fill:#c0c0c0}"
          ".N{fill:#c8553d}.S{fill:#588b8b}.E{fill:#f2d0a4}.W{fill:#93b7be}"
          "polygon{stroke:#222;stroke-width:0.5}</style>\n";
    for (const auto& f : d.facets) {
        os << "<polygon class=\"" << f.kind << "\" points=\"";
        for (const auto& [x, y] : f.polygon) os << (x - xmin) * unit + 1 << ',' << (ymax - y) * unit + 1 << ' ';
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

inline nlohmann::json tiling_json(const TilingDocument& d) {
    nlohmann::json j;
    j["shape"] = d.shape;
    j["facets"] = nlohmann::json::array();
    for (const auto& f : d.facets) {
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& [x, y] : f.polygon) pts.push_back({x, y});
        j["facets"].push_back({{"kind", f.kind}, {"polygon", pts}});
    }
    return j;
}

} // namespace kpz
