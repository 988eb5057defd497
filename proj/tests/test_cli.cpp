#include <doctest.h>

#include <strata/cli.hpp>
#include <strata/hodograph.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "reference_forms.hpp"

namespace fs = std::filesystem;
using njson = nlohmann::json;

namespace {

struct CliResult {
    int code = -1;
    std::string out, err;
};

// run the real entry point in-process with captured streams
CliResult run_cli(std::vector<std::string> args) {
    std::vector<std::string> full;
    full.emplace_back("strata");
    for (auto& a : args) full.push_back(std::move(a));
    std::vector<char*> argv;
    argv.reserve(full.size());
    for (auto& s : full) argv.push_back(s.data());

    std::ostringstream os, es;
    auto* old_out = std::cout.rdbuf(os.rdbuf());
    auto* old_err = std::cerr.rdbuf(es.rdbuf());
    CliResult r;
    r.code = strata::cli_main(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    r.out = os.str();
    r.err = es.str();
    return r;
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "strata_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

njson load_json(const fs::path& p) { return njson::parse(slurp(p)); }

using TermMap = std::map<std::pair<int, int>, std::pair<std::string, std::string>>;

TermMap term_map(const njson& terms) {
    TermMap m;
    for (const auto& t : terms)
        m[{t[0].get<int>(), t[1].get<int>()}] = {t[2].get<std::string>(), t[3].get<std::string>()};
    return m;
}

TermMap term_map(const ref::BiPoly& p) {
    TermMap m;
    for (const auto& [e, c] : p.terms()) m[{e.a, e.b}] = {c.num_str(), c.den_str()};
    return m;
}

std::vector<std::string> data_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (first) {  // header
            first = false;
            continue;
        }
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

std::vector<double> split_numeric(const std::string& line) {
    std::vector<double> v;
    std::istringstream is(line);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            v.push_back(std::stod(tok));
        } catch (const std::exception&) {
            v.push_back(std::nan(""));
        }
    }
    return v;
}

}  // namespace

TEST_CASE("cli generates the polynomial family deterministically") {
    fs::path d1 = fresh_dir("gen1");
    fs::path d2 = fresh_dir("gen2");

    auto r1 = run_cli({"--out", d1.string(), "conserved", "gen", "--family", "poly", "--n", "3",
                       "--vars", "xs"});
    REQUIRE(r1.code == 0);
    CHECK(r1.out.find("wrote") != std::string::npos);

    njson doc = load_json(d1 / "conserved_poly_xs.json");
    CHECK(doc["family"] == "poly");
    CHECK(doc["n"] == 3);
    CHECK(doc["vars"] == "xs");
    REQUIRE(doc["densities"].size() == 3);
    CHECK(doc["densities"][2]["index"] == 3);
    CHECK(term_map(doc["densities"][2]["f0"]) == term_map(ref::f0_xs(3)));

    auto r2 = run_cli({"--out", d2.string(), "conserved", "gen", "--family", "poly", "--n", "3",
                       "--vars", "xs"});
    REQUIRE(r2.code == 0);
    CHECK(slurp(d1 / "conserved_poly_xs.json") == slurp(d2 / "conserved_poly_xs.json"));
}

TEST_CASE("cli attaches first-order corrections on request") {
    fs::path dir = fresh_dir("deform");
    auto r = run_cli({"--out", dir.string(), "deform", "--index", "3"});
    REQUIRE(r.code == 0);

    njson doc = load_json(dir / "deform.json");
    REQUIRE(doc["entries"].size() == 1);
    const auto& e = doc["entries"][0];
    CHECK(e["index"] == 3);
    CHECK(e["residual_order0_zero"] == true);
    CHECK(e["residual_order1_zero"] == true);
    CHECK(term_map(e["f0"]["terms"]) == term_map(ref::f0_xs(3)));
    CHECK(term_map(e["f1"]["terms"]) == term_map(ref::f1_xs(3)));

    // the gen route carries the same corrections
    auto g = run_cli({"--out", dir.string(), "conserved", "gen", "--family", "poly", "--n", "3",
                      "--vars", "xs", "--deform"});
    REQUIRE(g.code == 0);
    njson fam = load_json(dir / "conserved_poly_xs.json");
    CHECK(fam["deformed"] == true);
    CHECK(term_map(fam["densities"][2]["f1"]) == term_map(ref::f1_xs(3)));
}

TEST_CASE("cli reports the degenerate-ratio region area") {
    fs::path dir = fresh_dir("hyper");
    auto r = run_cli({"--out", dir.string(), "hyper", "--r", "0"});
    REQUIRE(r.code == 0);

    auto area_rows = data_lines(slurp(dir / "hyper_area.csv"));
    REQUIRE(area_rows.size() == 1);
    auto cells = split_numeric(area_rows[0]);
    REQUIRE(cells.size() == 5);  // r, units, closed, quadrature, diff
    CHECK(std::fabs(cells[2] - 4.0) < 1e-9);
    CHECK(std::fabs(cells[3] - 4.0) < 1e-8);
    CHECK(cells[4] < 1e-8);
    CHECK(area_rows[0].find("boussinesq") != std::string::npos);

    auto boundary_rows = data_lines(slurp(dir / "hyper_boundary.csv"));
    CHECK(boundary_rows.size() == 201);

    // json table rendering of the same artifact
    auto rj = run_cli({"--out", dir.string(), "--format", "json", "hyper", "--r", "0.25"});
    REQUIRE(rj.code == 0);
    njson area = load_json(dir / "hyper_area.json");
    REQUIRE(area.size() == 1);
    CHECK(area[0]["units"] == "boussinesq");
    CHECK(std::fabs(area[0]["area_closed"].get<double>() -
                    area[0]["area_quadrature"].get<double>()) < 1e-8);
    CHECK(area[0]["area_closed"].get<double>() > 4.0);  // area grows with stratification
}

TEST_CASE("cli traces a simple wave to the region edge") {
    fs::path dir = fresh_dir("sw");
    auto r = run_cli(
        {"--out", dir.string(), "hyper", "simple-wave", "--start", "0.1,0.2", "--r", "0"});
    REQUIRE(r.code == 0);
    njson doc = load_json(dir / "hyper_simple_wave_summary.json");
    CHECK(doc["r"] == 0.0);
    CHECK(doc["branch"] == 1);
    REQUIRE(doc["arcs"].size() == 2);  // both arclength directions by default
    for (const auto& a : doc["arcs"]) CHECK(a["points"].get<int>() > 10);
    CHECK(data_lines(slurp(dir / "hyper_simple_wave.csv")).size() > 20);

    // a start outside the region is a usage error
    auto bad = run_cli(
        {"--out", dir.string(), "hyper", "simple-wave", "--start", "0.1,1.2", "--r", "0"});
    CHECK(bad.code == 2);
}

TEST_CASE("cli hodograph run writes profiles, residuals and a summary") {
    fs::path d1 = fresh_dir("hodo1");
    fs::path d2 = fresh_dir("hodo2");
    std::vector<std::string> args = {"--out", "",     "hodograph", "run", "--r", "0.05",
                                     "--t",   "0,0.5", "--nx",      "11"};

    args[1] = d1.string();
    auto r1 = run_cli(args);
    REQUIRE(r1.code == 0);

    njson summary = load_json(d1 / "hodograph_summary.json");
    CHECK(summary["F_index"] == 3);
    CHECK(summary["nx"] == 11);
    CHECK(summary["unconverged_points"] == 0);
    REQUIRE(summary["times"].size() == 2);

    auto prof0 = data_lines(slurp(d1 / "hodograph_t0.csv"));
    REQUIRE(prof0.size() == 11);
    for (const auto& line : prof0) {
        auto c = split_numeric(line);  // x, xi, sigma, w, ubar1, ubar2
        REQUIRE(c.size() == 6);
        CHECK(std::fabs(c[1] - strata::sigma_zero_profile_xi0(c[0], 0.05)) < 1e-10);
        CHECK(c[2] == 0.0);
        CHECK(c[3] == 0.0);  // sigma = 0 means quiescent layers
    }
    CHECK(data_lines(slurp(d1 / "hodograph_residuals.csv")).size() == 22);

    args[1] = d2.string();
    auto r2 = run_cli(args);
    REQUIRE(r2.code == 0);
    for (const char* name :
         {"hodograph_t0.csv", "hodograph_t0.5.csv", "hodograph_residuals.csv",
          "hodograph_summary.json"})
        CHECK(slurp(d1 / name) == slurp(d2 / name));
}

TEST_CASE("cli sim run emits snapshots and a drift report") {
    fs::path dir = fresh_dir("sim");
    fs::path ic = dir / "ic.csv";
    {
        std::ofstream f(ic);
        f << "x,xi,sigma\n0,0.2,-0.1\n2,0.2,-0.1\n";
    }
    auto r = run_cli({"--out", dir.string(), "sim", "run", "--model", "full", "--r", "0.05",
                      "--ic", ic.string(), "--T", "0.1", "--nx", "16", "--x0", "0", "--x1", "2",
                      "--snapshots", "2", "--tracer", "1.0,1"});
    REQUIRE(r.code == 0);

    njson drift = load_json(dir / "sim_drift.json");
    CHECK(drift["nx"] == 16);
    CHECK(drift["model"] == "full");
    REQUIRE(drift["series"].size() == 2);
    // a constant state does not move: every monitored functional is frozen
    CHECK(drift["series"][1]["t"].get<double>() == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(drift["series"][1]["drift_xi"].get<double>() == 0.0);
    CHECK(drift["series"][1]["drift_F"].get<double>() == 0.0);
    CHECK(drift["series"][1]["drift_F_deformed"].get<double>() == 0.0);
    REQUIRE(drift["tracers"].size() == 1);
    CHECK(drift["tracers"][0]["sign"] == 1);
    CHECK(drift["tracers"][0]["max_drift"].get<double>() == 0.0);

    auto snap = data_lines(slurp(dir / "sim_t0.1.csv"));
    REQUIRE(snap.size() == 16);
    for (const auto& line : snap) {
        auto c = split_numeric(line);
        REQUIRE(c.size() == 3);
        CHECK(c[1] == 0.2);
        CHECK(c[2] == -0.1);
    }
}

TEST_CASE("cli verification commands accept the exact tables") {
    fs::path dir = fresh_dir("verify");
    auto cv = run_cli({"--out", dir.string(), "conserved", "verify", "--max-index", "4"});
    CHECK(cv.code == 0);
    CHECK(data_lines(slurp(dir / "conserved_verify.csv")).size() == 6);  // pairs j<k<=4

    auto dv = run_cli({"--out", dir.string(), "deform", "involution", "--max-index", "4"});
    CHECK(dv.code == 0);
    CHECK(data_lines(slurp(dir / "deform_involution.csv")).size() == 6);
}

TEST_CASE("cli usage errors exit with code 2 and a structured message") {
    fs::path dir = fresh_dir("usage");

    auto unknown = run_cli({"--out", dir.string(), "conserved", "gen", "--bogus"});
    CHECK(unknown.code == 2);
    njson err = njson::parse(unknown.err);
    CHECK(err["error"]["type"] == "usage");
    CHECK(!err["error"]["message"].get<std::string>().empty());

    // a required option is missing
    auto missing = run_cli({"--out", dir.string(), "sim", "run"});
    CHECK(missing.code == 2);
    CHECK(njson::parse(missing.err)["error"]["type"] == "usage");

    // domain validation happens before any work
    auto badr = run_cli({"--out", dir.string(), "hodograph", "run", "--r", "1.5"});
    CHECK(badr.code == 2);

    // sigma-zero mode needs an odd index
    auto even = run_cli({"--out", dir.string(), "hodograph", "run", "--F-index", "4"});
    CHECK(even.code == 2);
}

TEST_CASE("cli surfaces elliptic initial data as a structured failure") {
    fs::path dir = fresh_dir("elliptic");
    fs::path ic = dir / "ic.csv";
    {
        std::ofstream f(ic);
        f << "x,xi,sigma\n";
        // plateau that exceeds the sonic boundary for r = 0.3
        f << "-1,0,0.9\n-0.2,0,1.1\n0.2,0,1.1\n1,0,0.9\n";
    }
    auto r = run_cli({"--out", dir.string(), "sim", "run", "--model", "full", "--r", "0.3",
                      "--ic", ic.string(), "--T", "0.05", "--nx", "32", "--x0", "-1", "--x1", "1"});
    REQUIRE(r.code == 1);
    njson err = njson::parse(r.err);
    CHECK(err["error"]["type"] == "elliptic-state");
    CHECK(err["error"]["sigma"].get<double>() > 1.0);
    CHECK(err["error"]["cell"].get<int>() >= 0);
    CHECK(err["error"]["message"].get<std::string>().find("elliptic") != std::string::npos);
}
