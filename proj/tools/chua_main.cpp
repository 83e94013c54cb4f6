// chua: command-line front end for the hyperbolic Chua circuit library.
//
// Subcommands: simulate, poincare, lyapunov, bifurcate, map, nyquist, df,
// intercepts, cycles, fromcircuit, regions. Data goes to CSV/JSON files with
// round-trip decimal formatting; trajectory projections, bifurcation
// diagrams and label maps can be rendered to SVG. Identical invocations
// produce byte-identical files for any worker count.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "chua/circuitmap.hpp"
#include "chua/csvio.hpp"
#include "chua/dfan.hpp"
#include "chua/diagnostics.hpp"
#include "chua/model.hpp"
#include "chua/sim.hpp"
#include "chua/svg.hpp"
#include "chua/sweep.hpp"

using json = nlohmann::ordered_json;
using namespace chua;

namespace {

struct GlobalOpts {
    std::string out_dir;
    std::string prefix;
    int workers = 0;
    std::uint64_t seed = 0;
    bool dry_run = false;
    bool no_svg = false;

    [[nodiscard]] std::string path(const std::string& name) const {
        return (std::filesystem::path(out_dir) / (prefix + name)).string();
    }
};

struct ParamFlags {
    double alpha = 10.0;
    double beta = 20.0;
    double g0 = 0.0;
    double i0 = 0.0;

    [[nodiscard]] ChuaParams params() const { return ChuaParams(alpha, beta, g0, i0); }
};

struct IcFlags {
    double x0 = 0.01, y0 = 0.0, z0 = 0.0;
    [[nodiscard]] State state() const { return State(x0, y0, z0); }
};

struct IntegratorFlags {
    std::string method = "rk45";
    double step = 1e-3;
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double t_transient = 500.0;
    double t_sample = 500.0;
    double divergence_radius = 1e6;

    [[nodiscard]] IntegratorSettings settings() const {
        IntegratorSettings s;
        if (method == "rk4")
            s.method = Method::Rk4Fixed;
        else if (method == "rk45")
            s.method = Method::Rk45Adaptive;
        else
            throw std::invalid_argument("unknown method: " + method);
        s.step = step;
        s.rel_tol = rel_tol;
        s.abs_tol = abs_tol;
        s.t_transient = t_transient;
        s.t_sample = t_sample;
        s.divergence_radius = divergence_radius;
        s.validate();
        return s;
    }
};

void add_param_flags(CLI::App* cmd, ParamFlags& p) {
    cmd->add_option("--alpha", p.alpha, "C2/C1");
    cmd->add_option("--beta", p.beta, "R^2*C2/L");
    cmd->add_option("--g0", p.g0, "R*g_p");
    cmd->add_option("--i0", p.i0, "2*kappa*R*l*i_s/B");
}

void add_ic_flags(CLI::App* cmd, IcFlags& ic) {
    cmd->add_option("--x0", ic.x0, "initial x");
    cmd->add_option("--y0", ic.y0, "initial y");
    cmd->add_option("--z0", ic.z0, "initial z");
}

void add_integrator_flags(CLI::App* cmd, IntegratorFlags& f) {
    cmd->add_option("--method", f.method, "rk45 (adaptive) or rk4 (fixed step)");
    cmd->add_option("--step", f.step, "fixed step size");
    cmd->add_option("--rtol", f.rel_tol, "adaptive relative tolerance");
    cmd->add_option("--atol", f.abs_tol, "adaptive absolute tolerance");
    cmd->add_option("--transient", f.t_transient, "time discarded before recording");
    cmd->add_option("--t", f.t_sample, "time recorded after the transient");
    cmd->add_option("--radius", f.divergence_radius, "divergence norm bound");
}

void write_json(const std::string& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

json state_json(const State& s) {
    return json{{"x", s.x}, {"y", s.y}, {"z", s.z}};
}

// ---- JSON config mirrors (field names match the library structs) ----

ChuaParams params_from_json(const json& j) {
    return ChuaParams(j.at("alpha").get<double>(), j.at("beta").get<double>(),
                      j.at("g0").get<double>(), j.at("I0").get<double>());
}

State state_from_json(const json& j) {
    return State(j.at("x").get<double>(), j.at("y").get<double>(), j.at("z").get<double>());
}

IntegratorSettings integrator_from_json(const json& j) {
    IntegratorSettings s;
    if (j.contains("method")) {
        const std::string m = j.at("method").get<std::string>();
        if (m == "rk4")
            s.method = Method::Rk4Fixed;
        else if (m == "rk45")
            s.method = Method::Rk45Adaptive;
        else
            throw std::invalid_argument("integrator.method must be rk45 or rk4");
    }
    if (j.contains("step")) s.step = j.at("step").get<double>();
    if (j.contains("rel_tol")) s.rel_tol = j.at("rel_tol").get<double>();
    if (j.contains("abs_tol")) s.abs_tol = j.at("abs_tol").get<double>();
    if (j.contains("t_transient")) s.t_transient = j.at("t_transient").get<double>();
    if (j.contains("t_sample")) s.t_sample = j.at("t_sample").get<double>();
    if (j.contains("divergence_radius"))
        s.divergence_radius = j.at("divergence_radius").get<double>();
    s.validate();
    return s;
}

SweptParam swept_from_string(const std::string& s) {
    if (s == "g0") return SweptParam::G0;
    if (s == "I0" || s == "i0") return SweptParam::I0;
    if (s == "alpha") return SweptParam::Alpha;
    if (s == "beta") return SweptParam::Beta;
    throw std::invalid_argument("swept must be one of g0, I0, alpha, beta");
}

SweepDirection direction_from_string(const std::string& s) {
    if (s == "ForwardInherit" || s == "forward") return SweepDirection::ForwardInherit;
    if (s == "BackwardInherit" || s == "backward") return SweepDirection::BackwardInherit;
    if (s == "ColdStart" || s == "cold") return SweepDirection::ColdStart;
    throw std::invalid_argument("unknown sweep direction: " + s);
}

GridAxis axis_from_string(const std::string& s) {
    if (s == "alpha") return GridAxis::Alpha;
    if (s == "beta") return GridAxis::Beta;
    if (s == "g0") return GridAxis::G0;
    if (s == "I0" || s == "i0") return GridAxis::I0;
    if (s == "g0_plus_I0" || s == "g0+I0") return GridAxis::G0PlusI0;
    throw std::invalid_argument("unknown grid axis: " + s);
}

BifurcationSpec bifurcation_from_json(const json& j) {
    BifurcationSpec spec{params_from_json(j.at("p_base"))};
    if (j.contains("swept")) spec.swept = swept_from_string(j.at("swept").get<std::string>());
    spec.range = {j.at("range").at(0).get<double>(), j.at("range").at(1).get<double>()};
    spec.n_points = j.at("n_points").get<int>();
    if (j.contains("directions")) {
        spec.directions.clear();
        for (const auto& d : j.at("directions"))
            spec.directions.push_back(direction_from_string(d.get<std::string>()));
    }
    if (j.contains("ic_cold")) spec.ic_cold = state_from_json(j.at("ic_cold"));
    if (j.contains("integrator")) spec.integrator = integrator_from_json(j.at("integrator"));
    if (j.contains("max_crossings")) spec.max_crossings = j.at("max_crossings").get<std::size_t>();
    spec.validate();
    return spec;
}

GridSpec grid_from_json(const json& j, std::uint64_t default_seed) {
    GridSpec spec{params_from_json(j.at("p_base"))};
    spec.x_axis = axis_from_string(j.at("x_axis").get<std::string>());
    spec.x_range = {j.at("x_range").at(0).get<double>(), j.at("x_range").at(1).get<double>()};
    spec.x_points = j.at("x_points").get<int>();
    spec.y_axis = axis_from_string(j.at("y_axis").get<std::string>());
    spec.y_range = {j.at("y_range").at(0).get<double>(), j.at("y_range").at(1).get<double>()};
    spec.y_points = j.at("y_points").get<int>();
    const std::string backend = j.value("backend", std::string("analytic"));
    spec.backend = backend == "numeric" ? MapBackend::Numeric : MapBackend::Analytic;
    if (j.contains("integrator")) spec.integrator = integrator_from_json(j.at("integrator"));
    if (j.contains("ics"))
        for (const auto& s : j.at("ics")) spec.ics.push_back(state_from_json(s));
    spec.random_ics = j.value("random_ics", 0);
    spec.seed = j.value("seed", default_seed);
    if (j.contains("max_crossings")) spec.max_crossings = j.at("max_crossings").get<std::size_t>();
    spec.validate();
    return spec;
}

// ---- subcommand bodies ----

int run_simulate(const GlobalOpts& g, const ParamFlags& pf, const IcFlags& ic,
                 const IntegratorFlags& itf) {
    const ChuaParams p = pf.params();
    const IntegratorSettings cfg = itf.settings();
    if (g.dry_run) {
        std::cout << "simulate: config ok\n";
        return 0;
    }
    const IntegrationResult r = integrate(ic.state(), p, cfg);

    std::string csv = "t,x,y,z\n";
    for (std::size_t i = 0; i < r.trajectory.times.size(); ++i) {
        const State& s = r.trajectory.states[i];
        csv += csv_line({format_double(r.trajectory.times[i]), format_double(s.x),
                         format_double(s.y), format_double(s.z)});
    }
    write_text_file(g.path("trajectory.csv"), csv);

    if (!g.no_svg) {
        struct Proj {
            const char* name;
            double State::* a;
            double State::* b;
            double amin, amax, bmin, bmax;
        };
        const Proj projections[] = {
            {"xy", &State::x, &State::y, -20, 20, -5, 5},
            {"xz", &State::x, &State::z, -20, 20, -45, 45},
            {"yz", &State::y, &State::z, -5, 5, -45, 45},
        };
        for (const Proj& pr : projections) {
            SvgCanvas svg(800, 600, pr.amin, pr.amax, pr.bmin, pr.bmax);
            std::vector<std::pair<double, double>> pts;
            pts.reserve(r.trajectory.states.size());
            for (const State& s : r.trajectory.states) pts.emplace_back(s.*pr.a, s.*pr.b);
            svg.polyline(pts, "#1f4e8c", 0.6);
            svg.frame();
            write_text_file(g.path(std::string("projection_") + pr.name + ".svg"), svg.str());
        }
    }

    if (r.status != SimStatus::Completed) {
        write_json(g.path("diagnostic.json"),
                   json{{"error", to_string(r.status)},
                        {"escape_time", r.escape_time},
                        {"final_state", state_json(r.final_state)}});
        std::cerr << "simulate: " << to_string(r.status) << " at t = " << r.escape_time << "\n";
        return 2;
    }
    return 0;
}

int run_poincare(const GlobalOpts& g, const ParamFlags& pf, const IcFlags& ic,
                 const IntegratorFlags& itf, std::size_t max_crossings) {
    const ChuaParams p = pf.params();
    const IntegratorSettings cfg = itf.settings();
    if (g.dry_run) {
        std::cout << "poincare: config ok\n";
        return 0;
    }
    const PoincareResult r = poincare_crossings(ic.state(), p, cfg, max_crossings);
    std::string csv = "t,x,z,direction\n";
    for (const auto& c : r.crossings)
        csv += csv_line({format_double(c.t), format_double(c.state.x), format_double(c.state.z),
                         to_string(c.direction)});
    write_text_file(g.path("poincare.csv"), csv);
    if (r.status != SimStatus::Completed) {
        write_json(g.path("diagnostic.json"),
                   json{{"error", to_string(r.status)}, {"escape_time", r.escape_time}});
        std::cerr << "poincare: " << to_string(r.status) << "\n";
        return 2;
    }
    return 0;
}

int run_lyapunov(const GlobalOpts& g, const ParamFlags& pf, const IcFlags& ic,
                 const IntegratorFlags& itf) {
    const ChuaParams p = pf.params();
    const IntegratorSettings cfg = itf.settings();
    if (g.dry_run) {
        std::cout << "lyapunov: config ok\n";
        return 0;
    }
    const LyapunovResult r = lyapunov_spectrum(ic.state(), p, cfg);
    const json out{{"exponents", {r.exponents[0], r.exponents[1], r.exponents[2]}},
                   {"converged", r.converged},
                   {"t_used", r.t_used},
                   {"trace_average", r.trace_average}};
    write_json(g.path("lyapunov.json"), out);
    std::cout << out.dump(2) << "\n";
    return 0;
}

std::string bifurcate_csv(const std::vector<BifurcationRecord>& recs,
                          const std::vector<SweepDirection>& dirs) {
    std::string csv = "swept_value,direction,x_crossing,branch,class\n";
    for (const auto& r : recs) {
        const char* branch_name = to_string(dirs[static_cast<std::size_t>(r.branch)]);
        if (r.crossings.empty()) {
            csv += csv_line({format_double(r.swept_value), "", "", branch_name,
                             r.label.to_string()});
            continue;
        }
        for (const auto& c : r.crossings)
            csv += csv_line({format_double(r.swept_value), to_string(c.direction),
                             format_double(c.x), branch_name, r.label.to_string()});
    }
    return csv;
}

int run_bifurcate(const GlobalOpts& g, const BifurcationSpec& spec) {
    if (g.dry_run) {
        std::cout << "bifurcate: config ok\n";
        return 0;
    }
    const auto recs = bifurcation_diagram(spec, g.workers);
    write_text_file(g.path("bifurcation.csv"), bifurcate_csv(recs, spec.directions));

    // Analytic equilibrium branches, kept apart from the simulated records.
    std::string eq_csv = "swept_value,x,stable\n";
    for (const auto& q : equilibrium_branches(spec))
        eq_csv += csv_line({format_double(q.swept_value), format_double(q.x),
                            q.stable ? "1" : "0"});
    write_text_file(g.path("equilibria.csv"), eq_csv);

    if (!g.no_svg) {
        SvgCanvas svg(1000, 700, spec.range[0], spec.range[1], -20, 20);
        std::vector<std::pair<double, double>> pos, neg;
        for (const auto& r : recs)
            for (const auto& c : r.crossings)
                (c.direction == CrossingDirection::NegToPos ? pos : neg)
                    .emplace_back(r.swept_value, c.x);
        svg.scatter(pos, "#1f77b4", 0.5);
        svg.scatter(neg, "#d62728", 0.5);
        svg.frame();
        write_text_file(g.path("bifurcation.svg"), svg.str());
    }
    return 0;
}

std::string cell_label(const GridCell& cell, MapBackend backend) {
    if (cell.failed) return "failed";
    if (backend == MapBackend::Analytic) return cell.analytic.to_string();
    std::string s;
    for (const auto& a : cell.numeric) {
        if (!s.empty()) s += '+';
        s += a.to_string();
    }
    return s.empty() ? "empty" : s;
}

int run_map(const GlobalOpts& g, const GridSpec& spec) {
    if (g.dry_run) {
        std::cout << "map: config ok\n";
        return 0;
    }
    const ClassificationGrid grid = parameter_plane_map(spec, g.workers);
    const auto xs = linspace(spec.x_range[0], spec.x_range[1], spec.x_points);
    const auto ys = linspace(spec.y_range[0], spec.y_range[1], spec.y_points);

    std::string csv = std::string(to_string(spec.x_axis)) + "," + to_string(spec.y_axis) +
                      ",label\n";
    for (int iy = 0; iy < spec.y_points; ++iy)
        for (int ix = 0; ix < spec.x_points; ++ix)
            csv += csv_line({format_double(xs[static_cast<std::size_t>(ix)]),
                             format_double(ys[static_cast<std::size_t>(iy)]),
                             cell_label(grid.at(ix, iy), spec.backend)});
    write_text_file(g.path("map.csv"), csv);

    if (!g.no_svg) {
        static const char* kPalette[] = {"#4477aa", "#ee6677", "#228833", "#ccbb44",
                                         "#66ccee", "#aa3377", "#bbbbbb", "#222255",
                                         "#225522", "#552222", "#999944", "#cc3311"};
        std::map<std::string, std::string> color;
        SvgCanvas svg(900, 700, spec.x_range[0], spec.x_range[1], spec.y_range[0],
                      spec.y_range[1]);
        const double dx = spec.x_points > 1 ? (spec.x_range[1] - spec.x_range[0]) /
                                                  (spec.x_points - 1)
                                            : spec.x_range[1] - spec.x_range[0];
        const double dy = spec.y_points > 1 ? (spec.y_range[1] - spec.y_range[0]) /
                                                  (spec.y_points - 1)
                                            : spec.y_range[1] - spec.y_range[0];
        for (int iy = 0; iy < spec.y_points; ++iy)
            for (int ix = 0; ix < spec.x_points; ++ix) {
                const std::string label = cell_label(grid.at(ix, iy), spec.backend);
                auto it = color.find(label);
                if (it == color.end())
                    it = color.emplace(label, kPalette[color.size() % 12]).first;
                const double x = xs[static_cast<std::size_t>(ix)];
                const double y = ys[static_cast<std::size_t>(iy)];
                svg.rect(x - dx / 2, y - dy / 2, x + dx / 2, y + dy / 2, it->second);
            }
        int row = 0;
        for (const auto& [label, col] : color) {
            svg.rect(spec.x_range[0], spec.y_range[1] - (row + 1) * dy, spec.x_range[0] + dx,
                     spec.y_range[1] - row * dy, col);
            ++row;
        }
        svg.frame();
        write_text_file(g.path("map.svg"), svg.str());
        std::string legend = "label,color\n";
        for (const auto& [label, col] : color) legend += csv_line({label, col});
        write_text_file(g.path("map_legend.csv"), legend);
    }
    return 0;
}

int run_nyquist(const GlobalOpts& g, const ParamFlags& pf, double wmin, double wmax, int points) {
    const ChuaParams p = pf.params();
    if (!(wmin > 0.0) || !(wmax > wmin) || points < 2)
        throw std::invalid_argument("nyquist: need 0 < wmin < wmax and points >= 2");
    if (g.dry_run) {
        std::cout << "nyquist: config ok\n";
        return 0;
    }
    std::string csv = "omega,re,im\n";
    for (int i = 0; i < points; ++i) {
        const double w = wmin * std::pow(wmax / wmin, static_cast<double>(i) / (points - 1));
        const auto G = transfer_function(w, p);
        csv += csv_line({format_double(w), format_double(G.real()), format_double(G.imag())});
    }
    write_text_file(g.path("nyquist.csv"), csv);
    return 0;
}

int run_df(const GlobalOpts& g, const ParamFlags& pf, double xmax, int points) {
    const ChuaParams p = pf.params();
    if (!(xmax > 0.0) || points < 2) throw std::invalid_argument("df: need xmax > 0, points >= 2");
    if (g.dry_run) {
        std::cout << "df: config ok\n";
        return 0;
    }
    std::string csv = "X,N,locus\n";
    for (int i = 0; i < points; ++i) {
        const double X = xmax * static_cast<double>(i) / (points - 1);
        const double N = describing_function(X, p);
        std::string locus;
        if (N != 0.0) locus = format_double(-1.0 / N);
        csv += csv_line({format_double(X), format_double(N), locus});
    }
    write_text_file(g.path("df.csv"), csv);
    return 0;
}

int run_intercepts(const GlobalOpts& g, const ParamFlags& pf) {
    const ChuaParams p = pf.params();
    if (g.dry_run) {
        std::cout << "intercepts: config ok\n";
        return 0;
    }
    const InterceptionSet ic = interception_points(p);
    json out;
    out["omega"] = json::array();
    out["p"] = json::array();
    out["exists"] = json::array();
    for (int i = 0; i < 4; ++i) {
        out["omega"].push_back(i == 0 ? json("inf") : json(ic.omega[i]));
        out["p"].push_back(ic.p[i]);
        out["exists"].push_back(ic.exists[i]);
    }
    if (ic.exists[2]) out["inv_p2"] = ic.inv_p2();
    if (ic.exists[3]) out["inv_p3"] = ic.inv_p3();
    write_json(g.path("intercepts.json"), out);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_cycles(const GlobalOpts& g, const ParamFlags& pf) {
    const ChuaParams p = pf.params();
    if (g.dry_run) {
        std::cout << "cycles: config ok\n";
        return 0;
    }
    json out = json::array();
    for (const auto& c : predicted_limit_cycles(p))
        out.push_back(json{{"amplitude", c.amplitude},
                           {"omega", c.omega},
                           {"stable", c.stable},
                           {"point_index", c.point_index}});
    write_json(g.path("cycles.json"), out);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_fromcircuit(const GlobalOpts& g, const std::string& config_path) {
    std::ifstream in(config_path);
    if (!in) throw std::invalid_argument("cannot read circuit config: " + config_path);
    const json j = json::parse(in);
    CircuitSpec c{j.at("R").get<double>(),
                  j.at("C1").get<double>(),
                  j.at("C2").get<double>(),
                  j.at("L").get<double>(),
                  j.at("g_p").get<double>(),
                  j.value("kappa", 1.0),
                  DiodeSpec{j.at("diode").at("i_s").get<double>(),
                            j.at("diode").at("eta").get<double>(),
                            j.at("diode").value("m", 1),
                            j.at("diode").value("l", 1),
                            j.at("diode").value("v_T", 0.026)}};
    c.validate();
    if (g.dry_run) {
        std::cout << "fromcircuit: config ok\n";
        return 0;
    }
    const DimensionlessMap m = dimensionless_from_circuit(c);
    const json out{{"params",
                    {{"alpha", m.params.alpha},
                     {"beta", m.params.beta},
                     {"g0", m.params.g0},
                     {"I0", m.params.I0},
                     {"gamma", m.params.gamma()}}},
                   {"B", m.B},
                   {"tau", m.tau}};
    write_json(g.path("dimensionless.json"), out);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_regions(const GlobalOpts& g, const ParamFlags& pf) {
    const ChuaParams p = pf.params();
    if (g.dry_run) {
        std::cout << "regions: config ok\n";
        return 0;
    }
    const RegionLabel label = classify_region(p);
    json out;
    out["kind"] = label.kind == RegionLabel::Kind::Labels
                      ? "labels"
                      : (label.kind == RegionLabel::Kind::Boundary ? "boundary" : "out-of-range");
    out["label"] = label.to_string();
    json behaviors = json::array();
    const std::pair<Behavior, const char*> names[] = {
        {Behavior::Origin, "origin"},
        {Behavior::EquilibriaPm, "equilibria-pm"},
        {Behavior::CycleOmega2ToChaos, "cycle-w2-chaos"},
        {Behavior::CycleOmega3, "cycle-w3"},
        {Behavior::Unstable, "unstable"},
    };
    for (const auto& [b, name] : names)
        if (label.has(b)) behaviors.push_back(name);
    out["behaviors"] = behaviors;
    out["g0_plus_I0"] = p.g0 + p.I0;
    if (p.in_main_range()) {
        const InterceptionSet ic = interception_points(p);
        out["inv_p2"] = ic.inv_p2();
        out["inv_p3"] = ic.inv_p3();
    }
    write_json(g.path("regions.json"), out);
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hyperbolic Chua circuit: describing-function analysis, simulation, "
                 "Lyapunov diagnostics, bifurcation diagrams and parameter maps"};
    app.require_subcommand(1);

    GlobalOpts g;
    const char* env_dir = std::getenv("CHUA_OUTDIR");
    g.out_dir = env_dir ? env_dir : ".";
    app.add_option("--out-dir", g.out_dir, "output directory (default: $CHUA_OUTDIR or .)");
    app.add_option("--prefix", g.prefix, "output file name prefix");
    app.add_option("--workers", g.workers, "worker threads (0 = all cores)");
    app.add_option("--seed", g.seed, "seed for randomized IC probing");
    app.add_flag("--dry-run", g.dry_run, "validate configuration without computing");
    app.add_flag("--no-svg", g.no_svg, "skip SVG rendering");

    ParamFlags pf;
    IcFlags ic;
    IntegratorFlags itf;
    std::size_t max_crossings = 4096;
    double wmin = 0.1, wmax = 100.0, xmax = 10.0;
    int points = 400;
    std::string config_path;

    // Sweep flags (used when no JSON config is given).
    std::string swept = "g0", directions = "forward,backward", backend = "analytic";
    std::string x_axis = "g0_plus_I0", y_axis = "beta";
    std::vector<double> range{-1.0, 0.0}, x_range{-2.0, 1.0}, y_range{10.5, 30.0};
    int n_points = 201, x_points = 61, y_points = 40, random_ics = 0;

    auto* c_sim = app.add_subcommand("simulate", "integrate and emit trajectory CSV/SVG");
    add_param_flags(c_sim, pf);
    add_ic_flags(c_sim, ic);
    add_integrator_flags(c_sim, itf);

    auto* c_poi = app.add_subcommand("poincare", "y=0 section crossings, both directions");
    add_param_flags(c_poi, pf);
    add_ic_flags(c_poi, ic);
    add_integrator_flags(c_poi, itf);
    c_poi->add_option("--max-crossings", max_crossings, "stop after this many crossings");

    auto* c_lya = app.add_subcommand("lyapunov", "Lyapunov spectrum via the tangent flow");
    add_param_flags(c_lya, pf);
    add_ic_flags(c_lya, ic);
    add_integrator_flags(c_lya, itf);

    auto* c_bif = app.add_subcommand("bifurcate", "bifurcation diagram with continuation");
    add_param_flags(c_bif, pf);
    add_ic_flags(c_bif, ic);
    add_integrator_flags(c_bif, itf);
    c_bif->add_option("--config", config_path, "JSON config (BifurcationSpec fields)");
    c_bif->add_option("--swept", swept, "swept scalar: g0, I0, alpha, beta");
    c_bif->add_option("--lo", range[0], "sweep lower bound");
    c_bif->add_option("--hi", range[1], "sweep upper bound");
    c_bif->add_option("--points", n_points, "sweep points");
    c_bif->add_option("--directions", directions, "comma list: forward,backward,cold");
    c_bif->add_option("--max-crossings", max_crossings, "crossings kept per point");

    auto* c_map = app.add_subcommand("map", "2-D parameter plane classification");
    add_param_flags(c_map, pf);
    add_integrator_flags(c_map, itf);
    c_map->add_option("--config", config_path, "JSON config (grid spec fields)");
    c_map->add_option("--x-axis", x_axis, "x axis: alpha, beta, g0, I0, g0_plus_I0");
    c_map->add_option("--y-axis", y_axis, "y axis");
    c_map->add_option("--x-range", x_range, "x range lo hi")->expected(2);
    c_map->add_option("--y-range", y_range, "y range lo hi")->expected(2);
    c_map->add_option("--x-points", x_points, "grid columns");
    c_map->add_option("--y-points", y_points, "grid rows");
    c_map->add_option("--backend", backend, "analytic or numeric");
    c_map->add_option("--random-ics", random_ics, "extra random ICs per numeric cell");

    auto* c_nyq = app.add_subcommand("nyquist", "G(jw) over a log-spaced frequency grid");
    add_param_flags(c_nyq, pf);
    c_nyq->add_option("--wmin", wmin, "lowest frequency");
    c_nyq->add_option("--wmax", wmax, "highest frequency");
    c_nyq->add_option("--points", points, "grid points");

    auto* c_df = app.add_subcommand("df", "describing function N(X) and locus -1/N(X)");
    add_param_flags(c_df, pf);
    c_df->add_option("--xmax", xmax, "largest amplitude");
    c_df->add_option("--points", points, "grid points");

    auto* c_int = app.add_subcommand("intercepts", "interception frequencies and points");
    add_param_flags(c_int, pf);

    auto* c_cyc = app.add_subcommand("cycles", "predicted limit cycles with stability");
    add_param_flags(c_cyc, pf);

    auto* c_frc = app.add_subcommand("fromcircuit", "dimensionless parameters from a circuit");
    c_frc->add_option("--config", config_path, "circuit JSON")->required();

    auto* c_reg = app.add_subcommand("regions", "qualitative region classification");
    add_param_flags(c_reg, pf);

    for (CLI::App* sc : {c_sim, c_poi, c_lya, c_bif, c_map, c_nyq, c_df, c_int, c_cyc, c_frc,
                         c_reg})
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage errors are exit 1; help/version exit 0
    }

    try {
        if (!g.dry_run) std::filesystem::create_directories(g.out_dir);

        if (app.got_subcommand(c_sim)) return run_simulate(g, pf, ic, itf);
        if (app.got_subcommand(c_poi)) return run_poincare(g, pf, ic, itf, max_crossings);
        if (app.got_subcommand(c_lya)) return run_lyapunov(g, pf, ic, itf);
        if (app.got_subcommand(c_bif)) {
            BifurcationSpec spec = [&] {
                if (!config_path.empty()) {
                    std::ifstream in(config_path);
                    if (!in) throw std::invalid_argument("cannot read config: " + config_path);
                    return bifurcation_from_json(json::parse(in));
                }
                BifurcationSpec s{pf.params()};
                s.swept = swept_from_string(swept);
                s.range = {range[0], range[1]};
                s.n_points = n_points;
                s.directions.clear();
                std::stringstream ss(directions);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    s.directions.push_back(direction_from_string(tok));
                s.ic_cold = ic.state();
                s.integrator = itf.settings();
                s.max_crossings = max_crossings;
                s.validate();
                return s;
            }();
            return run_bifurcate(g, spec);
        }
        if (app.got_subcommand(c_map)) {
            GridSpec spec = [&] {
                if (!config_path.empty()) {
                    std::ifstream in(config_path);
                    if (!in) throw std::invalid_argument("cannot read config: " + config_path);
                    return grid_from_json(json::parse(in), g.seed);
                }
                GridSpec s{pf.params()};
                s.x_axis = axis_from_string(x_axis);
                s.x_range = {x_range[0], x_range[1]};
                s.x_points = x_points;
                s.y_axis = axis_from_string(y_axis);
                s.y_range = {y_range[0], y_range[1]};
                s.y_points = y_points;
                s.backend = backend == "numeric" ? MapBackend::Numeric : MapBackend::Analytic;
                s.integrator = itf.settings();
                s.random_ics = random_ics;
                s.seed = g.seed;
                s.validate();
                return s;
            }();
            return run_map(g, spec);
        }
        if (app.got_subcommand(c_nyq)) return run_nyquist(g, pf, wmin, wmax, points);
        if (app.got_subcommand(c_df)) return run_df(g, pf, xmax, points);
        if (app.got_subcommand(c_int)) return run_intercepts(g, pf);
        if (app.got_subcommand(c_cyc)) return run_cycles(g, pf);
        if (app.got_subcommand(c_frc)) return run_fromcircuit(g, config_path);
        if (app.got_subcommand(c_reg)) return run_regions(g, pf);
    } catch (const DivergedError& e) {
        std::cerr << json{{"error", "diverged"}, {"detail", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << json{{"error", "numerical"}, {"detail", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
