#include "strata/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "strata/conserved.hpp"
#include "strata/deformation.hpp"
#include "strata/hodograph.hpp"
#include "strata/models.hpp"
#include "strata/serialize.hpp"
#include "strata/simulator.hpp"
#include "strata/spectral.hpp"

namespace strata {
namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Raised after artifacts are written when a verification table contains
// failures; maps to exit code 1.
struct VerifyFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Global {
    std::string out = ".";
    std::string format = "csv";
    unsigned long seed = 0;
};

std::string out_path(const Global& g, const std::string& name) {
    std::filesystem::create_directories(g.out);
    return (std::filesystem::path(g.out) / name).string();
}

void note(const std::string& path) { std::cout << "wrote " << path << "\n"; }

// Tabular artifact rendered as CSV rows or a JSON array of row objects.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<ojson>> rows;

    explicit Table(std::vector<std::string> cols) : columns(std::move(cols)) {}

    void add(std::vector<ojson> cells) {
        if (cells.size() != columns.size()) throw std::logic_error("Table: bad row width");
        rows.push_back(std::move(cells));
    }

    static std::string cell_text(const ojson& v) {
        if (v.is_string()) return v.get<std::string>();
        return v.dump();
    }

    std::string emit(const Global& g, const std::string& stem) const {
        std::string path;
        if (g.format == "json") {
            ojson arr = ojson::array();
            for (const auto& r : rows) {
                ojson o;
                for (std::size_t i = 0; i < columns.size(); ++i) o[columns[i]] = r[i];
                arr.push_back(std::move(o));
            }
            path = out_path(g, stem + ".json");
            write_text_file(path, arr.dump(2) + "\n");
        } else {
            CsvWriter w(columns);
            for (const auto& r : rows) {
                std::vector<std::string> cells;
                cells.reserve(r.size());
                for (const auto& v : r) cells.push_back(cell_text(v));
                w.raw_row(cells);
            }
            path = out_path(g, stem + ".csv");
            write_text_file(path, w.str());
        }
        note(path);
        return path;
    }
};

void write_json_artifact(const Global& g, const std::string& name, const ojson& doc) {
    std::string path = out_path(g, name);
    write_text_file(path, doc.dump(2) + "\n");
    note(path);
}

std::vector<double> parse_times(const std::string& spec) {
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        double a, b, s;
        char c1, c2;
        std::istringstream is(spec);
        if (!(is >> a >> c1 >> b >> c2 >> s) || c1 != ':' || c2 != ':' || s <= 0)
            throw UsageError("bad time range '" + spec + "' (want start:end:step)");
        for (double t = a; t <= b + 1e-12; t += s) out.push_back(t);
    } else {
        std::istringstream is(spec);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            if (tok.empty()) continue;
            out.push_back(std::stod(tok));
        }
    }
    if (out.empty()) throw UsageError("empty time list '" + spec + "'");
    return out;
}

std::vector<double> parse_list(const std::string& spec, const char* what) {
    std::vector<double> out;
    std::istringstream is(spec);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    if (out.empty()) throw UsageError(std::string("empty ") + what + " list '" + spec + "'");
    return out;
}

std::array<double, 2> parse_pair(const std::string& spec, const char* what) {
    auto v = parse_list(spec, what);
    if (v.size() != 2) throw UsageError(std::string(what) + " wants two comma-separated values");
    return {v[0], v[1]};
}

std::string time_label(double t) {
    std::string s = format_double(t);
    for (char& c : s)
        if (c == '-') c = 'm';
    return s;
}

// ---------------------------------------------------------------- conserved

struct ConservedGenOpts {
    std::string family = "poly";
    int n = 6;
    std::string vars = "xs";
    bool deform = false;
};

void run_conserved_gen(const Global& g, const ConservedGenOpts& o) {
    Family fam = family_from_string(o.family);
    Vars vars = vars_from_string(o.vars);
    std::vector<ConservedDensity> ds;
    switch (fam) {
        case Family::poly: ds = generate_polynomial_family(o.n, vars); break;
        case Family::alg: ds = generate_algebraic_family(o.n, vars); break;
        case Family::toda: ds = generate_toda_family(o.n, vars); break;
    }
    if (o.deform) {
        if (fam != Family::poly || vars != Vars::xs)
            throw UsageError("--deform applies to the poly family in xs variables");
        deform_family(&ds, standard_H1());
    }
    ojson doc;
    doc["family"] = o.family;
    doc["n"] = o.n;
    doc["vars"] = to_string(vars);
    doc["deformed"] = o.deform;
    ojson arr = ojson::array();
    for (const auto& d : ds) arr.push_back(to_json(d));
    doc["densities"] = arr;
    write_json_artifact(g, "conserved_" + o.family + "_" + o.vars + ".json", doc);
}

struct PairListOpts {
    std::vector<std::string> pairs;
    int max_index = 0;
    std::string order = "o1";
};

std::vector<std::array<int, 2>> build_pairs(const PairListOpts& o) {
    std::vector<std::array<int, 2>> out;
    for (const auto& s : o.pairs) {
        auto p = parse_pair(s, "--pairs");
        int j = static_cast<int>(p[0]), k = static_cast<int>(p[1]);
        if (j < 1 || k < 1 || j == k) throw UsageError("--pairs wants distinct indices >= 1");
        out.push_back({std::min(j, k), std::max(j, k)});
    }
    if (o.max_index > 0)
        for (int j = 1; j <= o.max_index; ++j)
            for (int k = j + 1; k <= o.max_index; ++k) out.push_back({j, k});
    if (out.empty()) throw UsageError("give --pairs j,k and/or --max-index J");
    return out;
}

int involution_table(const Global& g, const PairListOpts& o, const std::string& stem) {
    bool first_order = o.order == "o1";
    auto pairs = build_pairs(o);
    int maxk = 0;
    for (auto& p : pairs) maxk = std::max(maxk, p[1]);

    auto fam = generate_polynomial_family(maxk, Vars::xs);
    if (first_order) deform_family(&fam, standard_H1());

    Table tab({"j", "k", "order", "zero"});
    int failures = 0;
    for (auto& p : pairs) {
        const auto& Fj = fam[p[0] - 1];
        const auto& Fk = fam[p[1] - 1];
        bool ok;
        if (first_order) {
            auto res = involution_residual_o1(Fj.f0, Fj.f1, Fk.f0, Fk.f1);
            ok = res.first.is_zero() && res.second.is_zero();
        } else {
            ok = involution_residual(Fj.f0, Fk.f0).is_zero();
        }
        if (!ok) ++failures;
        tab.add({p[0], p[1], o.order, ok ? 1 : 0});
    }
    tab.emit(g, stem);
    return failures;
}

void run_conserved_verify(const Global& g, const PairListOpts& o) {
    if (o.order != "o1" && o.order != "exact")
        throw UsageError("--order must be 'exact' or 'o1'");
    int failures = involution_table(g, o, "conserved_verify");
    if (failures > 0)
        throw VerifyFailure(std::to_string(failures) + " pair(s) left the involution table nonzero");
}

// ------------------------------------------------------------------- deform

struct DeformOpts {
    int index = 0;
    int max_index = 0;
};

void run_deform(const Global& g, const DeformOpts& o) {
    if (o.index < 1) throw UsageError("--index must be >= 1");
    int hi = std::max(o.index, o.max_index);
    auto fam = generate_polynomial_family(hi, Vars::xs);
    BiPoly H0 = standard_H0(), H1 = standard_H1();

    ojson doc;
    doc["h0"] = to_json(H0);
    doc["h1"] = to_json(H1);
    ojson entries = ojson::array();
    int failures = 0;
    for (int j = o.index; j <= hi; ++j) {
        const BiPoly& F0 = fam[j - 1].f0;
        BiPoly F1 = deform(F0, H1);
        auto res = verify_first_order(F0, F1, H0, H1);
        bool ok = res.first.is_zero() && res.second.is_zero();
        if (!ok) ++failures;
        ojson e;
        e["index"] = j;
        e["f0"] = to_json(F0);
        e["f1"] = to_json(F1);
        e["residual_order0_zero"] = res.first.is_zero();
        e["residual_order1_zero"] = res.second.is_zero();
        entries.push_back(std::move(e));
    }
    doc["entries"] = entries;
    write_json_artifact(g, "deform.json", doc);
    if (failures > 0) throw VerifyFailure("first-order verification failed");
}

void run_deform_involution(const Global& g, int max_index) {
    PairListOpts o;
    o.max_index = max_index;
    o.order = "o1";
    int failures = involution_table(g, o, "deform_involution");
    if (failures > 0)
        throw VerifyFailure(std::to_string(failures) + " pair(s) left the involution table nonzero");
}

// -------------------------------------------------------------------- hyper

struct HyperOpts {
    double r = 0.0;
    bool appendix_b = false;
    int samples = 201;
};

void run_hyper(const Global& g, const HyperOpts& o) {
    Scaling sc = o.appendix_b ? Scaling::fixed_g : Scaling::boussinesq;
    if (o.samples < 2) throw UsageError("--samples must be >= 2");

    Table boundary({"xi", "sigma_b"});
    for (int i = 0; i < o.samples; ++i) {
        double xi = -1.0 + 2.0 * i / (o.samples - 1);
        boundary.add({xi, sigma_boundary(xi, o.r, sc)});
    }
    boundary.emit(g, "hyper_boundary");

    double closed = region_area_closed(o.r, sc);
    double quad = region_area_quadrature(o.r, sc);
    Table area({"r", "units", "area_closed", "area_quadrature", "abs_diff"});
    area.add({o.r, o.appendix_b ? "fixed-g" : "boussinesq", closed, quad, std::abs(closed - quad)});
    area.emit(g, "hyper_area");
}

struct SimpleWaveOpts {
    std::string start;
    double r = 0.0;
    bool appendix_b = false;
    int branch = 1;
    int dir = 0;  // 0 = both arclength directions
    double max_arclen = 8.0;
};

void run_simple_wave(const Global& g, const SimpleWaveOpts& o) {
    auto s0 = parse_pair(o.start, "--start");
    Scaling sc = o.appendix_b ? Scaling::fixed_g : Scaling::boussinesq;
    Model model({Rational(format_double(o.r)), sc, Order::full});
    if (!model.is_hyperbolic(s0[0], s0[1]))
        throw UsageError("--start must lie strictly inside the hyperbolic region");
    if (o.branch != 1 && o.branch != -1) throw UsageError("--branch must be 1 or -1");
    if (o.dir != 0 && o.dir != 1 && o.dir != -1) throw UsageError("--dir must be -1, 0 or 1");

    std::vector<SimpleWaveCurve> arcs;
    if (o.dir == 0 || o.dir == -1)
        arcs.push_back(simple_wave_curve(model, s0[0], s0[1], o.branch, -1, o.max_arclen));
    if (o.dir == 0 || o.dir == 1)
        arcs.push_back(simple_wave_curve(model, s0[0], s0[1], o.branch, +1, o.max_arclen));

    Table curve({"xi", "sigma"});
    if (arcs.size() == 2) {
        for (auto it = arcs[0].pts.rbegin(); it != arcs[0].pts.rend(); ++it)
            curve.add({(*it)[0], (*it)[1]});
        for (std::size_t i = 1; i < arcs[1].pts.size(); ++i)
            curve.add({arcs[1].pts[i][0], arcs[1].pts[i][1]});
    } else {
        for (const auto& p : arcs[0].pts) curve.add({p[0], p[1]});
    }
    curve.emit(g, "hyper_simple_wave");

    ojson doc;
    doc["r"] = o.r;
    doc["units"] = o.appendix_b ? "fixed-g" : "boussinesq";
    doc["branch"] = o.branch;
    doc["start"] = ojson::array({s0[0], s0[1]});
    ojson ends = ojson::array();
    for (const auto& a : arcs) {
        ojson e;
        e["points"] = a.pts.size();
        e["hit_boundary"] = a.hit_boundary;
        e["hit_edge"] = a.hit_edge;
        e["tangent_horizontal"] = a.tangent_horizontal;
        e["tangent_vertical"] = a.tangent_vertical;
        ends.push_back(std::move(e));
    }
    doc["arcs"] = ends;
    write_json_artifact(g, "hyper_simple_wave_summary.json", doc);
}

// ---------------------------------------------------------------- hodograph

struct HodographRunOpts {
    int f_index = 3;
    std::string r = "0.05";
    std::string mode = "sigma-zero";
    std::string solve = "first-order";
    std::string times = "0:2:0.5";
    double xmin = -0.5, xmax = 0.5;
    int nx = 101;
};

HodographConfig make_hodograph_config(const HodographRunOpts& o) {
    HodographConfig cfg;
    cfg.f_index = o.f_index;
    cfg.r = Rational(o.r);
    cfg.mode = ic_mode_from_string(o.mode);
    cfg.solve = solve_mode_from_string(o.solve);
    cfg.xmin = o.xmin;
    cfg.xmax = o.xmax;
    cfg.nx = o.nx;
    if (cfg.mode == ICMode::sigma_zero && cfg.f_index % 2 == 0)
        throw UsageError("sigma-zero mode wants an odd --F-index");
    return cfg;
}

void run_hodograph_run(const Global& g, const HodographRunOpts& o) {
    HodographConfig cfg = make_hodograph_config(o);
    HodographSolver solver(cfg);
    auto times = parse_times(o.times);
    auto snaps = solver.evolve(times);

    double r = cfg.r.to_double();
    Table res({"t", "x", "res1", "res2", "converged"});
    int unconverged = 0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        Table snap({"x", "xi", "sigma", "w", "ubar1", "ubar2"});
        for (const auto& p : snaps[k]) {
            auto lay = HodographSolver::layer_variables(p.xi, p.sigma, r);
            snap.add({p.x, p.xi, p.sigma, lay[0], lay[1], lay[2]});
            res.add({p.t, p.x, p.res1, p.res2, p.converged ? 1 : 0});
            if (!p.converged) ++unconverged;
        }
        snap.emit(g, "hodograph_t" + time_label(times[k]));
    }
    res.emit(g, "hodograph_residuals");

    ojson doc;
    doc["F_index"] = cfg.f_index;
    doc["r"] = r;
    doc["mode"] = to_string(cfg.mode);
    doc["solve"] = to_string(cfg.solve);
    doc["nx"] = cfg.nx;
    doc["times"] = times;
    doc["points_per_time"] = cfg.nx;
    doc["unconverged_points"] = unconverged;
    write_json_artifact(g, "hodograph_summary.json", doc);
}

struct HodographCurvesOpts {
    std::string kind = "both";
    int f_index = 3;
    std::string r = "0.05";
    std::string t_levels = "0,0.5,1,1.5,2";
    std::string x_levels = "-0.4,-0.2,0,0.2,0.4";
    std::string box = "-0.995,0.995,-0.995,0.995";
    int grid = 401;
    bool first_order = false;
};

void run_hodograph_curves(const Global& g, const HodographCurvesOpts& o) {
    if (o.kind != "time" && o.kind != "space" && o.kind != "both")
        throw UsageError("--kind must be time, space or both");
    HodographRunOpts base;
    base.f_index = o.f_index;
    base.r = o.r;
    HodographConfig cfg = make_hodograph_config(base);
    HodographSolver solver(cfg);
    auto box = parse_list(o.box, "--box");
    if (box.size() != 4) throw UsageError("--box wants x0,x1,y0,y1");
    if (o.grid < 8) throw UsageError("--grid must be >= 8");

    Table tab({"kind", "level", "xi1", "sigma1", "xi2", "sigma2"});
    auto add_levels = [&](const char* kind, const std::string& levels, auto&& f) {
        for (double lv : parse_list(levels, "--levels")) {
            auto segs = level_segments(f, lv, box[0], box[1], box[2], box[3], o.grid);
            for (const auto& s : segs) tab.add({kind, lv, s[0], s[1], s[2], s[3]});
        }
    };
    if (o.kind != "space") {
        auto f = [&](double xi, double sg) {
            return o.first_order ? solver.time_level_o1(xi, sg) : solver.time_level(xi, sg);
        };
        add_levels("time", o.t_levels, f);
    }
    if (o.kind != "time") {
        auto f = [&](double xi, double sg) {
            return o.first_order ? solver.space_level_o1(xi, sg) : solver.space_level(xi, sg);
        };
        add_levels("space", o.x_levels, f);
    }
    tab.emit(g, "hodograph_curves");
}

// ---------------------------------------------------------------------- sim

struct SimOpts {
    std::string model = "full";
    std::string scaling = "boussinesq";
    std::string r = "0.05";
    std::string ic;
    double T = 2.0;
    int nx = 2048;
    double x0 = -0.5, x1 = 0.5;
    std::string scheme = "central-rk4";
    double cfl = 0.4;
    double c_visc = 0.15;
    std::string bc = "extend";
    int snapshots = 5;
    int monitor = 3;
    double ic_xmin = -0.5, ic_xmax = 0.5;
    std::string ic_solve = "first-order";
    std::vector<std::string> tracers;
};

std::vector<std::array<double, 3>> read_ic_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open initial-condition file: " + path);
    std::vector<std::array<double, 3>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::array<double, 3> v{};
        std::istringstream is(line);
        std::string tok;
        int i = 0;
        bool numeric = true;
        while (std::getline(is, tok, ',') && i < 3) {
            try {
                v[i] = std::stod(tok);
            } catch (const std::exception&) {
                numeric = false;
                break;
            }
            ++i;
        }
        if (!numeric) continue;  // header or comment row
        if (i != 3) throw UsageError("initial-condition rows want x,xi,sigma: " + path);
        rows.push_back(v);
    }
    if (rows.size() < 2) throw UsageError("initial-condition file has fewer than 2 rows: " + path);
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });
    return rows;
}

void fill_ic(const SimOpts& o, GridState* grid) {
    const int n = grid->nx;
    grid->xi.assign(n, 0.0);
    grid->sg.assign(n, 0.0);

    if (o.ic.rfind("hodograph:", 0) == 0) {
        int index = std::stoi(o.ic.substr(10));
        HodographRunOpts h;
        h.f_index = index;
        h.r = o.r;
        h.solve = o.ic_solve;
        h.xmin = o.ic_xmin;
        h.xmax = o.ic_xmax;
        HodographConfig cfg = make_hodograph_config(h);
        HodographSolver solver(cfg);
        for (int i = 0; i < n; ++i) {
            double x = std::clamp(grid->x_of(i), o.ic_xmin, o.ic_xmax);
            auto p = solver.solve_point(x, 0.0);
            if (!p.converged)
                throw std::runtime_error("hodograph initial condition failed to converge at x=" +
                                         format_double(x));
            grid->xi[i] = p.xi;
            grid->sg[i] = p.sigma;
        }
        return;
    }

    std::string path = o.ic;
    if (path.rfind("file:", 0) == 0) path = path.substr(5);
    auto rows = read_ic_csv(path);
    for (int i = 0; i < n; ++i) {
        double x = grid->x_of(i);
        if (x <= rows.front()[0]) {
            grid->xi[i] = rows.front()[1];
            grid->sg[i] = rows.front()[2];
        } else if (x >= rows.back()[0]) {
            grid->xi[i] = rows.back()[1];
            grid->sg[i] = rows.back()[2];
        } else {
            auto it = std::lower_bound(rows.begin(), rows.end(), x,
                                       [](const auto& row, double xv) { return row[0] < xv; });
            const auto& hi = *it;
            const auto& lo = *(it - 1);
            double w = (x - lo[0]) / (hi[0] - lo[0]);
            grid->xi[i] = lo[1] * (1 - w) + hi[1] * w;
            grid->sg[i] = lo[2] * (1 - w) + hi[2] * w;
        }
    }
}

void run_sim(const Global& g, const SimOpts& o) {
    if (o.ic.empty()) throw UsageError("--ic is required");
    if (o.nx < 8) throw UsageError("--nx must be >= 8");
    if (o.x1 <= o.x0) throw UsageError("--x1 must exceed --x0");
    if (o.snapshots < 2) throw UsageError("--snapshots must be >= 2");
    if (o.monitor < 1) throw UsageError("--monitor must be >= 1");
    if (o.bc != "periodic" && o.bc != "extend") throw UsageError("--bc must be periodic or extend");

    ModelParams mp{Rational(o.r), scaling_from_string(o.scaling), order_from_string(o.model)};
    Model model(mp);

    SimConfig cfg;
    cfg.scheme = scheme_from_string(o.scheme);
    cfg.cfl = o.cfl;
    cfg.c_visc = o.c_visc;
    cfg.periodic = o.bc == "periodic";

    GridState grid;
    grid.x0 = o.x0;
    grid.x1 = o.x1;
    grid.nx = o.nx;
    fill_ic(o, &grid);

    Simulator sim(model, cfg, grid);
    for (const auto& spec : o.tracers) {
        auto p = parse_pair(spec, "--tracer");
        int sign = p[1] >= 0 ? +1 : -1;
        sim.add_tracer(p[0], sign);
    }

    // Monitored densities: the Casimir pair plus the order-0 density and its
    // first-order completion at the configured index.
    auto fam = generate_polynomial_family(o.monitor, Vars::xs);
    deform_family(&fam, standard_H1());
    PolyEval f0(fam[o.monitor - 1].f0), f1(fam[o.monitor - 1].f1);
    double r = mp.r.to_double();
    auto F_base = [&](double xi, double sg) { return f0(xi, sg); };
    auto F_def = [&](double xi, double sg) { return f0(xi, sg) + r * f1(xi, sg); };

    std::vector<double> times;
    for (int k = 0; k < o.snapshots; ++k) times.push_back(o.T * k / (o.snapshots - 1));

    ojson series = ojson::array();
    std::array<double, 4> base{};
    auto record = [&](std::size_t k) {
        std::array<double, 4> vals = {sim.integral_xi(), sim.integral_sigma(),
                                      sim.integral(F_base), sim.integral(F_def)};
        if (k == 0) base = vals;
        ojson row;
        row["t"] = sim.state().t;
        row["int_xi"] = vals[0];
        row["int_sigma"] = vals[1];
        row["int_F"] = vals[2];
        row["int_F_deformed"] = vals[3];
        row["drift_xi"] = std::abs(vals[0] - base[0]);
        row["drift_sigma"] = std::abs(vals[1] - base[1]);
        row["drift_F"] = std::abs(vals[2] - base[2]);
        row["drift_F_deformed"] = std::abs(vals[3] - base[3]);
        series.push_back(std::move(row));
    };

    auto snapshot = [&](double t) {
        Table snap({"x", "xi", "sigma"});
        const auto& st = sim.state();
        for (int i = 0; i < st.nx; ++i) snap.add({st.x_of(i), st.xi[i], st.sg[i]});
        snap.emit(g, "sim_t" + time_label(t));
    };

    record(0);
    snapshot(times[0]);
    for (std::size_t k = 1; k < times.size(); ++k) {
        sim.advance_to(times[k]);
        record(k);
        snapshot(times[k]);
    }

    ojson doc;
    doc["model"] = o.model;
    doc["scaling"] = o.scaling;
    doc["r"] = r;
    doc["ic"] = o.ic;
    doc["nx"] = o.nx;
    doc["scheme"] = o.scheme;
    doc["cfl"] = o.cfl;
    doc["c_visc"] = o.c_visc;
    doc["bc"] = o.bc;
    doc["monitor_index"] = o.monitor;
    doc["series"] = series;
    ojson trs = ojson::array();
    for (const auto& tr : sim.tracers()) {
        ojson t;
        t["x"] = tr.x;
        t["sign"] = tr.sign;
        t["R_start"] = tr.R_start;
        t["R_now"] = tr.R_now;
        t["max_drift"] = tr.max_drift;
        trs.push_back(std::move(t));
    }
    doc["tracers"] = trs;
    write_json_artifact(g, "sim_drift.json", doc);
}

ojson error_doc(const std::string& type, const std::string& message) {
    ojson o;
    o["error"]["type"] = type;
    o["error"]["message"] = message;
    return o;
}

}  // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"Workbench for two-layer interfacial flow: exact densities, "
                 "deformations, hyperbolicity geometry, hodograph solutions and a "
                 "finite-volume oracle"};
    app.set_config("--config", "", "Read options from an INI/TOML-style file");
    app.fallthrough();
    app.require_subcommand(1);

    Global g;
    app.add_option("--out", g.out, "Output directory")->capture_default_str();
    app.add_option("--format", g.format, "Tabular artifact format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--seed", g.seed, "Seed recorded for randomized sampling runs")
        ->capture_default_str();

    // conserved
    auto* conserved = app.add_subcommand("conserved", "Conserved-density families");
    conserved->require_subcommand(1);
    ConservedGenOpts cg;
    auto* cgen = conserved->add_subcommand("gen", "Generate a density family as JSON");
    cgen->add_option("--family", cg.family, "poly | alg | toda")
        ->check(CLI::IsMember({"poly", "alg", "toda"}))
        ->capture_default_str();
    cgen->add_option("--n", cg.n, "Number of members")->check(CLI::Range(1, 64))
        ->capture_default_str();
    cgen->add_option("--vars", cg.vars, "Variable pair: uv | xs")
        ->check(CLI::IsMember({"uv", "xs"}))
        ->capture_default_str();
    cgen->add_flag("--deform", cg.deform, "Attach first-order corrections (poly family, xs)");
    cgen->callback([&] { run_conserved_gen(g, cg); });

    PairListOpts cv;
    auto* cver = conserved->add_subcommand("verify", "Pairwise involution table");
    cver->add_option("--pairs", cv.pairs, "Index pair j,k (repeatable)");
    cver->add_option("--max-index", cv.max_index, "All pairs up to this index");
    cver->add_option("--order", cv.order, "exact | o1")
        ->check(CLI::IsMember({"exact", "o1"}))
        ->capture_default_str();
    cver->callback([&] { run_conserved_verify(g, cv); });

    // deform
    auto* deform_cmd = app.add_subcommand("deform", "First-order deformation of densities");
    DeformOpts dopt;
    deform_cmd->add_option("--index", dopt.index, "Density index to deform");
    deform_cmd->add_option("--max-index", dopt.max_index, "Deform a range up to this index");
    int dinv_max = 16;
    auto* dinv = deform_cmd->add_subcommand("involution", "Pairwise o1 involution table");
    dinv->add_option("--max-index", dinv_max, "All pairs up to this index")->capture_default_str();
    dinv->callback([&] { run_deform_involution(g, dinv_max); });
    deform_cmd->callback([&] {
        if (!dinv->parsed()) run_deform(g, dopt);
    });

    // hyper
    auto* hyper = app.add_subcommand("hyper", "Hyperbolicity region geometry");
    HyperOpts hy;
    hyper->add_option("--r", hy.r, "Density-ratio parameter in [0,1)")->capture_default_str();
    hyper->add_flag("--appendix-b", hy.appendix_b, "Fixed-gravity units");
    hyper->add_option("--samples", hy.samples, "Boundary sample count")->capture_default_str();
    SimpleWaveOpts sw;
    auto* hsw = hyper->add_subcommand("simple-wave", "Trace a simple-wave curve");
    hsw->add_option("--start", sw.start, "Start point xi,sigma")->required();
    hsw->add_option("--r", sw.r, "Density-ratio parameter in [0,1)")->capture_default_str();
    hsw->add_flag("--appendix-b", sw.appendix_b, "Fixed-gravity units");
    hsw->add_option("--branch", sw.branch, "Slope branch: 1 | -1")->capture_default_str();
    hsw->add_option("--dir", sw.dir, "Arclength direction: -1 | 1 | 0 (both)")
        ->capture_default_str();
    hsw->add_option("--max-arclen", sw.max_arclen, "Arclength budget")->capture_default_str();
    hsw->callback([&] { run_simple_wave(g, sw); });
    hyper->callback([&] {
        if (!hsw->parsed()) run_hyper(g, hy);
    });

    // hodograph
    auto* hodo = app.add_subcommand("hodograph", "Implicit local solutions");
    hodo->require_subcommand(1);
    HodographRunOpts hr;
    auto* hrun = hodo->add_subcommand("run", "Solve snapshots on an x-grid");
    hrun->add_option("--F-index", hr.f_index, "Density index")->capture_default_str();
    hrun->add_option("--r", hr.r, "Density-ratio parameter (decimal string, kept exact)")
        ->capture_default_str();
    hrun->add_option("--mode", hr.mode, "sigma-zero | xi-constant")
        ->check(CLI::IsMember({"sigma-zero", "xi-constant"}))
        ->capture_default_str();
    hrun->add_option("--solve", hr.solve, "first-order | exact")
        ->check(CLI::IsMember({"first-order", "exact"}))
        ->capture_default_str();
    hrun->add_option("--t", hr.times, "Times: start:end:step or comma list")
        ->capture_default_str();
    hrun->add_option("--xmin", hr.xmin, "Left edge of the x-window")->capture_default_str();
    hrun->add_option("--xmax", hr.xmax, "Right edge of the x-window")->capture_default_str();
    hrun->add_option("--nx", hr.nx, "Grid points")->capture_default_str();
    hrun->callback([&] { run_hodograph_run(g, hr); });

    HodographCurvesOpts hc;
    auto* hcur = hodo->add_subcommand("curves", "Constant-t and constant-x level curves");
    hcur->add_option("--kind", hc.kind, "time | space | both")->capture_default_str();
    hcur->add_option("--F-index", hc.f_index, "Density index")->capture_default_str();
    hcur->add_option("--r", hc.r, "Density-ratio parameter (decimal string)")
        ->capture_default_str();
    hcur->add_option("--t-levels", hc.t_levels, "Time levels (comma list)")->capture_default_str();
    hcur->add_option("--x-levels", hc.x_levels, "Position levels (comma list)")
        ->capture_default_str();
    hcur->add_option("--box", hc.box, "Sample box x0,x1,y0,y1")->capture_default_str();
    hcur->add_option("--grid", hc.grid, "Samples per box side")->capture_default_str();
    hcur->add_flag("--first-order", hc.first_order, "Use the first-order level functions");
    hcur->callback([&] { run_hodograph_curves(g, hc); });

    // sim
    auto* simc = app.add_subcommand("sim", "Finite-volume evolution oracle");
    simc->require_subcommand(1);
    SimOpts so;
    auto* srun = simc->add_subcommand("run", "Evolve an initial condition");
    srun->add_option("--model", so.model, "o0 | o1 | full")
        ->check(CLI::IsMember({"o0", "o1", "full"}))
        ->capture_default_str();
    srun->add_option("--scaling", so.scaling, "boussinesq | fixed-g")
        ->check(CLI::IsMember({"boussinesq", "fixed-g"}))
        ->capture_default_str();
    srun->add_option("--r", so.r, "Density-ratio parameter (decimal string)")
        ->capture_default_str();
    srun->add_option("--ic", so.ic, "Initial condition: CSV path or hodograph:<index>")
        ->required();
    srun->add_option("--T", so.T, "Final time")->capture_default_str();
    srun->add_option("--nx", so.nx, "Cells")->capture_default_str();
    srun->add_option("--x0", so.x0, "Domain left edge")->capture_default_str();
    srun->add_option("--x1", so.x1, "Domain right edge")->capture_default_str();
    srun->add_option("--scheme", so.scheme, "central-rk4 | lax-friedrichs")
        ->check(CLI::IsMember({"central-rk4", "lax-friedrichs"}))
        ->capture_default_str();
    srun->add_option("--cfl", so.cfl, "CFL number in (0, 0.5]")->capture_default_str();
    srun->add_option("--cvisc", so.c_visc, "Artificial-viscosity coefficient")
        ->capture_default_str();
    srun->add_option("--bc", so.bc, "periodic | extend")->capture_default_str();
    srun->add_option("--snapshots", so.snapshots, "Snapshot count (incl. t=0)")
        ->capture_default_str();
    srun->add_option("--monitor", so.monitor, "Density index for drift monitoring")
        ->capture_default_str();
    srun->add_option("--ic-xmin", so.ic_xmin, "Hodograph IC window left edge")
        ->capture_default_str();
    srun->add_option("--ic-xmax", so.ic_xmax, "Hodograph IC window right edge")
        ->capture_default_str();
    srun->add_option("--ic-solve", so.ic_solve, "Hodograph IC solve mode")
        ->check(CLI::IsMember({"first-order", "exact"}))
        ->capture_default_str();
    srun->add_option("--tracer", so.tracers, "Characteristic tracer x,sign (repeatable)");
    srun->callback([&] { run_sim(g, so); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << error_doc("usage", e.what()).dump() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << error_doc("usage", e.what()).dump() << "\n";
        return 2;
    } catch (const EllipticStateError& e) {
        ojson doc = error_doc("elliptic-state", e.what());
        doc["error"]["cell"] = e.cell;
        doc["error"]["x"] = e.x;
        doc["error"]["t"] = e.t;
        doc["error"]["xi"] = e.xi;
        doc["error"]["sigma"] = e.sigma;
        std::cerr << doc.dump() << "\n";
        return 1;
    } catch (const VerifyFailure& e) {
        std::cerr << error_doc("verification", e.what()).dump() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << error_doc("usage", e.what()).dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << error_doc("runtime", e.what()).dump() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace strata
