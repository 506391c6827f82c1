#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "kpz/core/error.hpp"
#include "kpz/growth/png.hpp"
#include "kpz/lpp/lpp.hpp"

namespace kpz {

// Minimal CSV table: header plus rows of already formatted cells.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    template <class... T>
    void add(const T&... cells) {
        std::vector<std::string> r;
        (r.push_back(cell(cells)), ...);
        if (!header.empty() && r.size() != header.size()) throw InvalidInput("row width differs from header");
        rows.push_back(std::move(r));
    }

    std::string str() const {
        std::ostringstream os;
        write_row(os, header);
        for (const auto& r : rows) write_row(os, r);
        return os.str();
    }

    void save(const std::string& path) const {
        std::ofstream f(path);
        if (!f) throw Error("cannot open " + path + " for writing");
        f << str();
        if (!f) throw Error("write failed for " + path);
    }

    static std::string cell(const std::string& s) { return s; }
    static std::string cell(const char* s) { return s; }
    template <class T>
    static std::string cell(const T& v) {
        std::ostringstream os;
        if constexpr (std::is_floating_point_v<T>) os << std::setprecision(std::numeric_limits<double>::max_digits10);
        os << v;
        return os.str();
    }

private:
    static void write_row(std::ostream& os, const std::vector<std::string>& r) {
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (k) os << ',';
            bool quote = r[k].find_first_of(",\"\n") != std::string::npos;
            if (quote) {
                os << '"';
                for (char c : r[k]) os << (c == '"' ? "\"\"" : std::string(1, c));
                os << '"';
            } else {
                os << r[k];
            }
        }
        os << '\n';
    }
};

inline nlohmann::json to_json(const NucleationSet& ev) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& e : ev.events) pts.push_back({e.x, e.s});
    const char* region = ev.region == Region::droplet_quadrant ? "droplet_quadrant"
                         : ev.region == Region::droplet_cone   ? "droplet_cone"
                                                               : "flat_window";
    return {{"region", region}, {"t", ev.t}, {"intensity", ev.intensity}, {"xlo", ev.xlo}, {"xhi", ev.xhi}, {"events", pts}};
}

inline NucleationSet nucleations_from_json(const nlohmann::json& j) {
    NucleationSet ev;
    std::string r = j.at("region").get<std::string>();
    if (r == "droplet_quadrant") ev.region = Region::droplet_quadrant;
    else if (r == "droplet_cone") ev.region = Region::droplet_cone;
    else if (r == "flat_window") ev.region = Region::flat_window;
    else throw InvalidInput("unknown region " + r);
    ev.t = j.at("t").get<double>();
    ev.intensity = j.value("intensity", 2.0);
    ev.xlo = j.value("xlo", 0.0);
    ev.xhi = j.value("xhi", 0.0);
    for (const auto& p : j.at("events")) ev.events.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    std::sort(ev.events.begin(), ev.events.end(), [](auto& a, auto& b) { return a.s < b.s; });
    return ev;
}

inline nlohmann::json to_json(const PathResult& p) {
    nlohmann::json path = nlohmann::json::array();
    for (const auto& [i, j] : p.path) path.push_back({i, j});
    return {{"value", p.value}, {"endpoint", {p.endpoint.first, p.endpoint.second}}, {"path", path}};
}

inline CsvTable weights_csv(const WeightGrid& w) {
    CsvTable t;
    t.header = {"i", "j", "w"};
    for (long i = w.i0; i < w.i0 + w.rows; ++i)
        for (long j = w.j0; j < w.j0 + w.cols; ++j)
            if (!std::isnan(w(i, j))) t.add(i, j, w(i, j));
    return t;
}

inline CsvTable lpp_table_csv(const LppTable& g) {
    CsvTable t;
    t.header = {"i", "j", "G"};
    for (long i = 1; i <= g.n; ++i)
        for (long j = 1; j <= g.m; ++j) t.add(i, j, g(i, j));
    return t;
}

} // namespace kpz
