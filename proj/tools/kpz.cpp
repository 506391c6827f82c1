// kpz: command-line front end for simulations, exact formulas, Airy
// numerics, random matrices, tilings, experiments and golden tables.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kpz/airy/covariance.hpp"
#include "kpz/airy/kernels.hpp"
#include "kpz/exact/fredholm_discrete.hpp"
#include "kpz/exact/schuetz.hpp"
#include "kpz/exact/toeplitz.hpp"
#include "kpz/growth/png.hpp"
#include "kpz/growth/tasep.hpp"
#include "kpz/harness/experiments.hpp"
#include "kpz/harness/io.hpp"
#include "kpz/harness/stats.hpp"
#include "kpz/interlace/array.hpp"
#include "kpz/interlace/aztec.hpp"
#include "kpz/interlace/tiling.hpp"
#include "kpz/lpp/lpp.hpp"
#include "kpz/lpp/weights.hpp"
#include "kpz/matrix/gue.hpp"

using namespace kpz;
using nlohmann::json;

namespace {

constexpr int exit_pass = 0, exit_fail = 1, exit_usage = 2;

struct Sink {
    std::string path;
    std::ofstream file;
    std::ostream& out() {
        if (path.empty() || path == "-") return std::cout;
        if (!file.is_open()) {
            file.open(path);
            if (!file) throw Error("cannot open " + path);
        }
        return file;
    }
};

std::vector<double> grid(double lo, double hi, double step) {
    if (!(step > 0.0) || hi < lo) throw InvalidParameter("grid needs step > 0 and hi >= lo");
    std::vector<double> g;
    for (long k = 0;; ++k) {
        double x = lo + static_cast<double>(k) * step;
        if (x > hi + 1e-12) break;
        g.push_back(x);
    }
    return g;
}

HeightFunction initial_profile(const std::string& ic, double m, long lo, long hi, bool periodic, Rng& rng) {
    InitialCondition c = ic == "flat"   ? InitialCondition::make_flat()
                         : ic == "wedge" ? InitialCondition::make_wedge()
                         : ic == "bernoulli" ? InitialCondition::make_bernoulli(m)
                                             : throw InvalidParameter("unknown initial condition " + ic);
    return make_initial(c, {lo, hi}, rng, periodic ? Boundary::periodic : Boundary::frozen);
}

WeightLaw weight_law(const std::string& name, double q) {
    if (name == "geometric") return WeightLaw::geometric(q);
    if (name == "geometric1") return WeightLaw::geometric_plus_one(q);
    if (name == "exponential") return WeightLaw::exponential();
    throw InvalidParameter("unknown weight law " + name);
}

void print_report(const Report& r, bool json_out, std::ostream& os) {
    if (json_out) {
        os << r.to_json().dump() << '\n';
        return;
    }
    for (const auto& c : r.checks)
        os << (c.pass ? "PASS " : "FAIL ") << r.id << ": " << c.name << " = " << c.value << " (threshold " << c.threshold
           << ")" << (c.detail.empty() ? "" : "  " + c.detail) << '\n';
    os << r.id << (r.passed() ? " passed" : " FAILED") << " in " << r.seconds << " s\n";
}

// INI file: top-level keys id, replicas, seed, workers, output; any other
// key is a numeric model parameter.
ExperimentSpec spec_from_file(const std::string& path) {
    if (std::filesystem::path(path).extension() == ".json") {
        std::ifstream f(path);
        if (!f) throw Error("cannot read " + path);
        return spec_from_json(json::parse(f));
    }
    auto items = CLI::ConfigINI().from_file(path);
    std::map<std::string, std::string> kv;
    for (const auto& it : items)
        if (!it.inputs.empty()) kv[it.name] = it.inputs.front();
    if (!kv.count("id")) throw InvalidInput("spec file lacks an id");
    ExperimentSpec s = default_spec(kv["id"]);
    for (const auto& [k, v] : kv) {
        if (k == "id") continue;
        else if (k == "replicas") s.replicas = std::stol(v);
        else if (k == "seed") s.seed = std::stoull(v);
        else if (k == "workers") s.workers = static_cast<unsigned>(std::stoul(v));
        else if (k == "output") s.output = v;
        else s.params[k] = std::stod(v);
    }
    return s;
}

// ---- simulate ----

struct SimulateOpts {
    std::string model = "tasep", ic = "wedge", update = "parallel", format = "ndjson", law = "geometric1", out;
    double t = 10.0, q = 0.5, slope = 0.0;
    long replicas = 1, lo = -20, hi = 21, n = 10, m = 10;
    int N = 5;
    bool periodic = false;
    std::vector<double> xs;
    std::uint64_t seed = 1;
};

int run_simulate(const SimulateOpts& o) {
    if (o.replicas < 1) throw InvalidParameter("replicas must be at least 1");
    Sink sink{o.out, {}};
    std::ostream& os = sink.out();
    const bool csv = o.format == "csv";
    if (!csv && o.format != "ndjson") throw InvalidParameter("format must be csv or ndjson");
    CsvTable table;
    for (long r = 0; r < o.replicas; ++r) {
        const std::uint64_t rseed = split_seed(o.seed, static_cast<std::uint64_t>(r));
        Rng rng(rseed);
        json rec{{"model", o.model}, {"replica", r}, {"seed", rseed}};
        if (o.model == "tasep" || o.model == "tasep-ct") {
            HeightFunction h0 = initial_profile(o.ic, o.slope, o.lo, o.hi, o.periodic, rng);
            HeightFunction h;
            if (o.model == "tasep") {
                Update u = o.update == "sequential" ? Update::sequential : Update::parallel;
                h = tasep_discrete_run(h0, o.q, static_cast<long>(std::lround(o.t)), u, rng);
            } else {
                h = tasep_ct_run(h0, o.t, rng).final_state;
            }
            if (csv) {
                table.header = {"seed", "t", "x", "h"};
                for (std::size_t k = 0; k < h.size(); ++k) table.add(rseed, o.t, h.origin + static_cast<long>(k), h.h[k]);
                continue;
            }
            rec["origin"] = h.origin;
            rec["h"] = h.h;
            rec["particles"] = h.particles();
        } else if (o.model == "png" || o.model == "png-flat") {
            std::vector<double> xs = o.xs.empty() ? std::vector<double>{0.0} : o.xs;
            std::vector<long> hs;
            if (o.model == "png") {
                bool origin_only = xs.size() == 1 && xs[0] == 0.0;
                hs = origin_only ? std::vector<long>{png_droplet_sample(o.t, rng).h0} : png_droplet_sample(o.t, rng, xs).heights;
            } else {
                hs = png_flat_sample(o.t, xs, rng);
            }
            if (csv) {
                table.header = {"seed", "t", "x", "h"};
                for (std::size_t k = 0; k < xs.size(); ++k) table.add(rseed, o.t, xs[k], hs[k]);
                continue;
            }
            rec["t"] = o.t;
            rec["x"] = xs;
            rec["h"] = hs;
        } else if (o.model == "lpp") {
            WeightGrid w = sample_weights(weight_law(o.law, o.q), o.n, o.m, rng);
            PathResult p = lpp_point_to_point(w, o.n, o.m);
            if (csv) {
                table.header = {"replica", "n", "m", "G"};
                table.add(r, o.n, o.m, p.value);
                continue;
            }
            rec.update(to_json(p));
        } else if (o.model == "interlace") {
            InterlacedArray a = interlace_ct_run(interlace_init(o.N), o.t, rng);
            if (csv) {
                table.header = {"replica", "n", "i", "position"};
                for (int n = 1; n <= a.N; ++n)
                    for (int i = 1; i <= n; ++i) table.add(r, n, i, a.x[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(i - 1)]);
                continue;
            }
            rec["array"] = a.x;
            rec["tasep"] = project_level_edge(a);
        } else if (o.model == "aztec") {
            AztecArray a = aztec_shuffle_run(o.N, o.q, static_cast<int>(std::lround(o.t)), rng);
            if (csv) {
                table.header = {"replica", "n", "i", "position"};
                for (int n = 1; n <= a.N; ++n)
                    for (int i = 1; i <= n; ++i) table.add(r, n, i, a.z[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(i - 1)]);
                continue;
            }
            rec["array"] = a.z;
            rec["tasep"] = aztec_to_tasep(a);
        } else {
            throw InvalidParameter("unknown model " + o.model);
        }
        os << rec.dump() << '\n';
    }
    if (csv) os << table.str();
    return exit_pass;
}

// ---- exact ----

struct ExactOpts {
    std::string what = "toeplitz", out;
    long n = 0, nmax = -1;
    double t = 1.0;
    std::vector<long> y, x;
};

int run_exact(const ExactOpts& o) {
    Sink sink{o.out, {}};
    CsvTable table;
    if (o.what == "toeplitz" || o.what == "fredholm") {
        table.header = {"n", "t", "cdf"};
        long lo = o.nmax >= 0 ? 0 : o.n, hi = o.nmax >= 0 ? o.nmax : o.n;
        if (o.what == "fredholm" && o.nmax >= 0) {
            auto v = png_cdf_fredholm_table(hi, o.t);
            for (long n = 0; n <= hi; ++n) table.add(n, o.t, v[static_cast<std::size_t>(n)]);
        } else {
            for (long n = lo; n <= hi; ++n)
                table.add(n, o.t, o.what == "toeplitz" ? png_cdf_toeplitz(n, o.t) : png_cdf_fredholm_discrete(n, o.t));
        }
    } else if (o.what == "schuetz") {
        if (o.y.empty()) throw InvalidParameter("--y is required");
        table.header = {"x", "probability"};
        auto fmt = [](const std::vector<long>& v) {
            std::string s;
            for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + std::to_string(v[k]);
            return s;
        };
        if (!o.x.empty()) table.add(fmt(o.x), schuetz_transition({o.y, o.x, o.t}));
        else
            for (const auto& [x, p] : schuetz_distribution(o.y, o.t)) table.add(fmt(x), p);
    } else {
        throw InvalidParameter("exact target must be toeplitz, fredholm or schuetz");
    }
    sink.out() << table.str();
    return exit_pass;
}

// ---- airy ----

struct AiryOpts {
    std::string what = "f2", process = "A2", out;
    double lo = -6.0, hi = 4.0, step = 0.5;
    int nodes = 40;
    std::vector<double> taus, cuts, lags;
};

int run_airy(const AiryOpts& o) {
    Sink sink{o.out, {}};
    AirySettings st;
    st.nodes = o.nodes;
    CsvTable table;
    if (o.what == "f2" || o.what == "xi1" || o.what == "tw1") {
        table.header = {"s", "cdf", "error"};
        for (double s : grid(o.lo, o.hi, o.step)) {
            FredholmResult r = o.what == "f2"  ? tw2_cdf_result(s, st)
                               : o.what == "tw1" ? airy1_joint_cdf_result({0.0}, {s / 2.0}, st)
                                                 : airy1_joint_cdf_result({0.0}, {std::pow(2.0, -1.0 / 3.0) * s}, st);
            table.add(s, detail::clamp01(r.value), r.error);
        }
    } else if (o.what == "joint") {
        if (o.taus.empty() || o.taus.size() != o.cuts.size()) throw InvalidParameter("--taus and --cuts must have equal nonzero length");
        auto r = o.process == "A1" ? airy1_joint_cdf_result(o.taus, o.cuts, st) : airy2_joint_cdf_result(o.taus, o.cuts, st);
        table.header = {"process", "value", "error", "nodes"};
        table.add(o.process, detail::clamp01(r.value), r.error, r.nodes);
    } else if (o.what == "cov") {
        table.header = {"process", "lag", "covariance", "error"};
        AiryProcess p = o.process == "A1" ? AiryProcess::A1 : AiryProcess::A2;
        std::vector<double> lags = o.lags.empty() ? std::vector<double>{0.0, 1.0, 2.0} : o.lags;
        for (double l : lags) {
            auto c = airy_covariance(p, l);
            table.add(o.process, l, c.value, c.error);
        }
    } else {
        throw InvalidParameter("airy target must be f2, xi1, tw1, joint or cov");
    }
    sink.out() << table.str();
    return exit_pass;
}

// ---- matrix ----

struct MatrixOpts {
    std::string what = "gue", format = "ndjson", out;
    int N = 20;
    long samples = 1;
    double t = 1.0, T = 1.0;
    std::vector<double> taus;
    std::uint64_t seed = 1;
};

int run_matrix(const MatrixOpts& o) {
    if (o.samples < 1) throw InvalidParameter("samples must be at least 1");
    Sink sink{o.out, {}};
    std::ostream& os = sink.out();
    const bool csv = o.format == "csv";
    if (!csv && o.format != "ndjson") throw InvalidParameter("format must be csv or ndjson");
    CsvTable table;
    table.header = {"replica", "time", "index", "value"};
    auto rows = [&](long r, double time, const std::vector<double>& v) {
        for (std::size_t k = 0; k < v.size(); ++k) table.add(r, time, k + 1, v[k]);
    };
    for (long r = 0; r < o.samples; ++r) {
        Rng rng(split_seed(o.seed, static_cast<std::uint64_t>(r)));
        json rec{{"kind", o.what}, {"sample", r}, {"N", o.N}};
        auto vec = [](const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
        if (o.what == "gue") {
            rec["eigenvalues"] = vec(sample_gue(o.N, rng).eigenvalues());
        } else if (o.what == "ou") {
            auto p = ou_two_time(o.N, o.t, rng);
            rec["t"] = o.t;
            rec["first"] = vec(p.first.eigenvalues());
            rec["second"] = vec(p.second.eigenvalues());
        } else if (o.what == "bridge") {
            auto g = o.taus.empty() ? grid(-o.T, o.T, o.T / 8.0) : o.taus;
            auto path = gue_bridge_ensemble(o.N, o.T, g, rng);
            rec["times"] = path.times;
            json vals = json::array();
            for (const auto& v : path.values) vals.push_back(vec(v));
            rec["eigenvalues"] = vals;
        } else if (o.what == "edge") {
            auto taus = o.taus.empty() ? std::vector<double>{0.0} : o.taus;
            rec["tau"] = taus;
            rec["edge"] = edge_process_samples(o.N, taus, rng);
        } else {
            throw InvalidParameter("matrix target must be gue, ou, bridge or edge");
        }
        if (csv) {
            if (o.what == "gue") rows(r, 0.0, rec["eigenvalues"]);
            else if (o.what == "ou") {
                rows(r, 0.0, rec["first"]);
                rows(r, o.t, rec["second"]);
            } else if (o.what == "bridge") {
                for (std::size_t k = 0; k < rec["times"].size(); ++k) rows(r, rec["times"][k], rec["eigenvalues"][k]);
            } else {
                for (std::size_t k = 0; k < rec["tau"].size(); ++k) table.add(r, rec["tau"][k].get<double>(), o.N, rec["edge"][k].get<double>());
            }
        } else {
            os << rec.dump() << '\n';
        }
    }
    if (csv) os << table.str();
    return exit_pass;
}

// ---- tiling ----

struct TilingOpts {
    std::string what = "aztec", format = "svg", out;
    int N = 4, R = 8;
    double t = 2.0, q = 0.5;
    std::uint64_t seed = 1;
};

int run_tiling(const TilingOpts& o) {
    Rng rng(o.seed);
    TilingDocument doc;
    if (o.what == "aztec") doc = render_domino(aztec_shuffle_run(o.N, o.q, o.N, rng));
    else if (o.what == "interlace") doc = render_lozenge(interlace_ct_run(interlace_init(o.N), o.t, rng), o.R);
    else throw InvalidParameter("tiling target must be aztec or interlace");
    Sink sink{o.out, {}};
    if (o.format == "svg") sink.out() << tiling_svg(doc);
    else if (o.format == "json") sink.out() << tiling_json(doc).dump() << '\n';
    else throw InvalidParameter("format must be svg or json");
    return exit_pass;
}

// ---- experiment ----

struct ExperimentOpts {
    std::string id, spec_file, output;
    long replicas = 0;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    std::vector<std::string> params;
    bool list = false, json_out = false;
};

int run_experiment_cmd(const ExperimentOpts& o) {
    if (o.list) {
        for (const auto& e : experiment_registry())
            std::cout << e.id << "  (" << e.default_replicas << " replicas)  " << e.description << '\n';
        return exit_pass;
    }
    ExperimentSpec s;
    if (!o.spec_file.empty()) s = spec_from_file(o.spec_file);
    else if (!o.id.empty()) s = default_spec(o.id);
    else throw InvalidParameter("give an experiment id or --spec");
    if (o.replicas != 0) s.replicas = o.replicas;
    if (o.seed != 0) s.seed = o.seed;
    if (o.workers != 0) s.workers = o.workers;
    if (!o.output.empty()) s.output = o.output;
    for (const auto& kv : o.params) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw InvalidParameter("parameters take the form key=value");
        s.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
    Report r = run_experiment(s);
    print_report(r, o.json_out, std::cout);
    return r.passed() ? exit_pass : exit_fail;
}

// ---- tables ----

struct TablesOpts {
    std::string dir = "tables";
    long replicas = 10000;
    std::uint64_t seed = 7;
    bool covariance = false;
};

int run_tables(const TablesOpts& o) {
    if (o.replicas < 1) throw InvalidParameter("replicas must be at least 1");
    std::filesystem::create_directories(o.dir);
    auto path = [&](const std::string& f) { return (std::filesystem::path(o.dir) / f).string(); };

    CsvTable png;
    png.header = {"n", "t", "cdf_toeplitz", "cdf_fredholm", "mc_estimate", "mc_sigma"};
    for (double t : {0.5, 1.0, 2.0, 5.0}) {
        std::vector<long> h(static_cast<std::size_t>(o.replicas));
        parallel_for(h.size(), [&](std::size_t r) {
            Rng rng(split_seed(split_seed(o.seed, static_cast<std::uint64_t>(t * 1000)), r));
            h[r] = png_droplet_sample(t, rng).h0;
        });
        long nmax = static_cast<long>(std::ceil(2.0 * t + 6.0 * std::cbrt(t) + 4.0));
        for (long n = 0; n <= nmax; ++n) {
            double p = static_cast<double>(std::count_if(h.begin(), h.end(), [&](long v) { return v <= n; })) / static_cast<double>(h.size());
            png.add(n, t, png_cdf_toeplitz(n, t), png_cdf_fredholm_discrete(n, t), p,
                    std::sqrt(p * (1.0 - p) / static_cast<double>(h.size())));
        }
    }
    png.save(path("png_droplet_cdf.csv"));

    CsvTable f2, xi1;
    f2.header = xi1.header = {"s", "cdf", "error"};
    for (double s : grid(-6.0, 4.0, 0.25)) {
        auto a = tw2_cdf_result(s);
        f2.add(s, detail::clamp01(a.value), a.error);
        auto b = airy1_joint_cdf_result({0.0}, {std::pow(2.0, -1.0 / 3.0) * s});
        xi1.add(s, detail::clamp01(b.value), b.error);
    }
    f2.save(path("f2.csv"));
    xi1.save(path("xi1.csv"));

    CsvTable mom;
    mom.header = {"law", "mean", "variance"};
    auto m2 = airy_marginal_moments(AiryProcess::A2);
    auto m1 = cdf_moments([](double s) { return xi1_cdf(s); }, -10.0, 6.0);
    mom.add("F2", m2.mean, m2.variance);
    mom.add("xi1", m1.mean, m1.variance);
    mom.save(path("moments.csv"));

    if (o.covariance) {
        CsvTable cov;
        cov.header = {"process", "lag", "covariance", "error"};
        for (auto [p, name] : {std::pair{AiryProcess::A2, "A2"}, std::pair{AiryProcess::A1, "A1"}})
            for (double l : {0.0, 0.5, 1.0, 2.0, 3.0, 4.0}) {
                auto c = airy_covariance(p, l);
                cov.add(name, l, c.value, c.error);
            }
        cov.save(path("covariance.csv"));
    }
    std::cout << "tables written to " << o.dir << '\n';
    return exit_pass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"KPZ growth models, exact formulas and Airy process numerics"};
    app.require_subcommand(1);

    SimulateOpts so;
    auto* sim = app.add_subcommand("simulate", "sample growth models");
    sim->add_option("--model", so.model, "tasep|tasep-ct|png|png-flat|lpp|interlace|aztec")->capture_default_str();
    sim->add_option("--ic", so.ic, "flat|wedge|bernoulli")->capture_default_str();
    sim->add_option("--slope", so.slope, "bernoulli slope m");
    sim->add_option("--update", so.update, "parallel|sequential")->capture_default_str();
    sim->add_option("-t,--time", so.t, "time (steps for discrete models)")->capture_default_str();
    sim->add_option("-q", so.q, "TASEP q, geometric parameter or Aztec jump probability")->capture_default_str();
    sim->add_option("--lo", so.lo, "window start")->capture_default_str();
    sim->add_option("--hi", so.hi, "window end (exclusive)")->capture_default_str();
    sim->add_flag("--periodic", so.periodic, "periodic window");
    sim->add_option("-x", so.xs, "query positions (PNG)")->delimiter(',');
    sim->add_option("--law", so.law, "geometric|geometric1|exponential")->capture_default_str();
    sim->add_option("-n", so.n, "LPP rows")->capture_default_str();
    sim->add_option("-m", so.m, "LPP columns")->capture_default_str();
    sim->add_option("-N", so.N, "levels (interlace, aztec)")->capture_default_str();
    sim->add_option("-r,--replicas", so.replicas)->capture_default_str();
    sim->add_option("-s,--seed", so.seed)->capture_default_str();
    sim->add_option("--format", so.format, "csv|ndjson")->capture_default_str();
    sim->add_option("-o,--out", so.out, "output file (default stdout)");

    ExactOpts eo;
    auto* ex = app.add_subcommand("exact", "exact finite-time formulas");
    ex->add_option("what", eo.what, "toeplitz|fredholm|schuetz")->required();
    ex->add_option("-n", eo.n)->capture_default_str();
    ex->add_option("--nmax", eo.nmax, "table n = 0..nmax");
    ex->add_option("-t,--time", eo.t)->capture_default_str();
    ex->add_option("--y", eo.y, "initial positions, decreasing")->delimiter(',');
    ex->add_option("--x", eo.x, "final positions, decreasing")->delimiter(',');
    ex->add_option("-o,--out", eo.out);

    AiryOpts ao;
    auto* ai = app.add_subcommand("airy", "Tracy-Widom laws and Airy process numerics");
    ai->add_option("what", ao.what, "f2|xi1|tw1|joint|cov")->required();
    ai->add_option("--process", ao.process, "A1|A2")->capture_default_str();
    ai->add_option("--lo", ao.lo)->capture_default_str();
    ai->add_option("--hi", ao.hi)->capture_default_str();
    ai->add_option("--step", ao.step)->capture_default_str();
    ai->add_option("--nodes", ao.nodes, "quadrature nodes per cut")->capture_default_str();
    ai->add_option("--taus", ao.taus)->delimiter(',');
    ai->add_option("--cuts", ao.cuts)->delimiter(',');
    ai->add_option("--lags", ao.lags)->delimiter(',');
    ai->add_option("-o,--out", ao.out);

    MatrixOpts mo;
    auto* ma = app.add_subcommand("matrix", "GUE, OU, bridge and edge samples");
    ma->add_option("what", mo.what, "gue|ou|bridge|edge")->required();
    ma->add_option("-N", mo.N)->capture_default_str();
    ma->add_option("--samples", mo.samples)->capture_default_str();
    ma->add_option("-t,--time", mo.t, "OU lag")->capture_default_str();
    ma->add_option("-T", mo.T, "bridge half-length")->capture_default_str();
    ma->add_option("--taus", mo.taus, "times (edge, bridge)")->delimiter(',');
    ma->add_option("-s,--seed", mo.seed)->capture_default_str();
    ma->add_option("--format", mo.format, "csv|ndjson")->capture_default_str();
    ma->add_option("-o,--out", mo.out);

    TilingOpts to;
    auto* ti = app.add_subcommand("tiling", "render lozenge or domino tilings");
    ti->add_option("what", to.what, "interlace|aztec")->required();
    ti->add_option("-N", to.N)->capture_default_str();
    ti->add_option("-R", to.R, "lozenge strip width")->capture_default_str();
    ti->add_option("-t,--time", to.t, "interlace run time")->capture_default_str();
    ti->add_option("-q", to.q)->capture_default_str();
    ti->add_option("-s,--seed", to.seed)->capture_default_str();
    ti->add_option("--format", to.format, "svg|json")->capture_default_str();
    ti->add_option("-o,--out", to.out);

    ExperimentOpts xo;
    auto* xp = app.add_subcommand("experiment", "run a named experiment");
    xp->add_option("id", xo.id);
    xp->add_option("--spec", xo.spec_file, "INI or JSON spec file");
    xp->add_option("-r,--replicas", xo.replicas);
    xp->add_option("-s,--seed", xo.seed);
    xp->add_option("-w,--workers", xo.workers);
    xp->add_option("-p,--param", xo.params, "key=value model parameter");
    xp->add_option("-o,--output", xo.output, "JSON report path");
    xp->add_flag("--json", xo.json_out, "print the report as JSON");
    xp->add_flag("--list", xo.list, "list experiments");

    TablesOpts tb;
    auto* ta = app.add_subcommand("tables", "write golden CSV tables");
    ta->add_option("-d,--dir", tb.dir)->capture_default_str();
    ta->add_option("-r,--replicas", tb.replicas)->capture_default_str();
    ta->add_option("-s,--seed", tb.seed)->capture_default_str();
    ta->add_flag("--covariance", tb.covariance, "include Airy covariances (slow)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? exit_pass : exit_usage;
    }

    try {
        if (*sim) return run_simulate(so);
        if (*ex) return run_exact(eo);
        if (*ai) return run_airy(ao);
        if (*ma) return run_matrix(mo);
        if (*ti) return run_tiling(to);
        if (*xp) return run_experiment_cmd(xo);
        if (*ta) return run_tables(tb);
    } catch (const InvalidParameter& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const InvalidInput& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const InvalidQuery& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_fail;
    }
    return exit_usage;
}
