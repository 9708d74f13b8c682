#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "central_solver.hpp"
#include "config.hpp"
#include "csv.hpp"
#include "eigensolver_1d.hpp"
#include "state_io.hpp"

using namespace qnb;
namespace fs = std::filesystem;

namespace {

// Fresh scratch directory per test case, under the test binary's CWD.
std::string scratch(const std::string& name) {
    const std::string dir = "io_scratch/" + name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(bool(in));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("config: sections, comments, typed access") {
    const auto cfg = KeyValueConfig::parse_text("# leading comment\n"
                                                "[potential]\n"
                                                "kind = box\n"
                                                "a = 1.5\n"
                                                "; semicolon comment\n"
                                                "[grid]\n"
                                                "  n   =  2001  \n"
                                                "x_min = -8\n"
                                                "label = left edge\n",
                                                "mem");
    CHECK(cfg.get("potential.kind") == "box");
    CHECK(cfg.get_double("potential.a") == 1.5);
    CHECK(cfg.get_int("grid.n") == 2001);
    CHECK(cfg.get_double("grid.x_min") == -8.0);
    // values keep interior spaces, only the ends are trimmed
    CHECK(cfg.get("grid.label") == "left edge");
    CHECK(cfg.has("grid.n"));
    CHECK(!cfg.has("grid.x_max"));
    CHECK(cfg.get_or("grid.x_max", "8") == "8");
    CHECK(cfg.get_double_or("grid.x_max", 8.0) == 8.0);
    CHECK(cfg.get_int_or("solver.max_states", 10) == 10);
    CHECK(cfg.keys_in("grid") ==
          std::vector<std::string>{"grid.n", "grid.x_min", "grid.label"});
    CHECK(cfg.origin() == "mem");
}

TEST_CASE("config: malformed input fails with the offending line number") {
    const auto message_of = [](const std::string& text) {
        try {
            KeyValueConfig::parse_text(text, "bad.ini");
            return std::string("no error");
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
    };
    CHECK(message_of("[grid]\nn 2001\n").find("bad.ini:2:") == 0);
    CHECK(message_of("key = 1\n").find("bad.ini:1:") == 0);
    CHECK(message_of("key = 1\n").find("before any [section]") != std::string::npos);
    CHECK(message_of("[grid\nn = 1\n").find("bad.ini:1:") == 0);
    CHECK(message_of("[]\n").find("empty name") != std::string::npos);
    CHECK(message_of("[g]\n= 3\n").find("missing key") != std::string::npos);
    // duplicates report both lines
    const auto dup = message_of("[g]\nn = 1\n\nn = 2\n");
    CHECK(dup.find("bad.ini:4:") == 0);
    CHECK(dup.find("line 2") != std::string::npos);
}

TEST_CASE("config: typed getters validate and point at the line") {
    const auto cfg = KeyValueConfig::parse_text("[grid]\nn = 20x\nh = 0.1\n", "t.ini");
    CHECK_THROWS_WITH_AS(cfg.get_int("grid.n"),
                         "t.ini:2: value '20x' is not a valid integer", ConfigError);
    CHECK_THROWS_WITH_AS(cfg.get_int("grid.h"), "t.ini:3: value '0.1' is not a valid integer",
                         ConfigError);
    CHECK_THROWS_AS(cfg.get("grid.missing"), ConfigError);
    CHECK_THROWS_AS(cfg.get_double("grid.missing"), ConfigError);
    CHECK_THROWS_WITH_AS(cfg.fail("grid.n", "out of range"), "t.ini:2: out of range",
                         ConfigError);
}

TEST_CASE("csv: header, comments, rows, full-precision formatting") {
    CsvWriter w({"x [length]", "E [energy]"});
    w.comment("units: hbar = 1, mass = 1");
    w.row({0.5, 3.141592653589793});
    w.row({-0.0, 1e-300});
    const std::string text = w.str();
    CHECK(text.find("# units: hbar = 1, mass = 1\n") == 0);
    CHECK(text.find("x [length],E [energy]\n") != std::string::npos);

    // %.17g survives the round trip back to the identical double
    const std::string pi_text = CsvWriter::format(3.141592653589793);
    CHECK(std::strtod(pi_text.c_str(), nullptr) == 3.141592653589793);
    CHECK(CsvWriter::format(1.0) == "1");

    CHECK_THROWS_AS(w.row({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(w.row_text({"a", "b,c"}), std::invalid_argument);
    CHECK_THROWS_AS(CsvWriter({}), std::invalid_argument);
    CHECK_THROWS_AS(CsvWriter({"a,b"}), std::invalid_argument);

    w.row_text({"total", "PASS"});
    CHECK(w.str().find("total,PASS\n") != std::string::npos);
}

TEST_CASE("csv: write_file emits bytes verbatim and flags unwritable paths") {
    const std::string dir = scratch("csv_write");
    CsvWriter w({"n", "v"});
    w.row({1.0, 2.0});
    w.write_file(dir + "/t.csv");
    CHECK(slurp(dir + "/t.csv") == w.str());
    CHECK_THROWS_AS(w.write_file(dir + "/no_such_subdir/t.csv"), IoError);
}

TEST_CASE("state io: 1d bundle round-trips samples and constants exactly") {
    const std::string dir = scratch("io_1d");
    const Units units{1.0, 1.0};
    const auto pot = Potential1D::box(1.0);
    ShootingConfig cfg;
    cfg.max_states = 2;
    const auto spectrum = solve_bound_states_1d(pot, Grid1D(0.0, 1.0, 201), units, cfg);
    REQUIRE(spectrum.states.size() == 2);
    const auto& st = spectrum.states[1];

    save_state_1d(st, pot, dir);
    CHECK(probe_bundle(dir) == BundleKind::one_dimensional);
    const auto back = load_state_1d(dir);

    CHECK(back.state.E == st.E);
    CHECK(back.state.nodes == 1);
    CHECK(back.state.grid.n == 201);
    CHECK(back.state.grid.x_min == 0.0);
    CHECK(back.state.grid.x_max == 1.0);
    REQUIRE(back.state.R.size() == st.R.size());
    for (std::size_t i = 0; i < st.R.size(); ++i) CHECK(back.state.R[i] == st.R[i]);
    CHECK(back.potential.kind() == Potential1D::Kind::box);
    CHECK(back.potential.width() == 1.0);
    CHECK(back.state.units.hbar == 1.0);
}

TEST_CASE("state io: tabulated 1d potential persists its samples") {
    const std::string dir = scratch("io_1d_tab");
    const Units units{2.0, 0.5};
    const std::vector<double> xs{-1.0, 0.0, 1.0};
    const std::vector<double> vs{3.0, 0.25, 3.0};
    const auto pot = Potential1D::tabulated(xs, vs);
    StationaryState1D st{Grid1D(-1.0, 1.0, 5), {0.0, 0.5, 1.0, 0.5, 0.0}, 0.75, 0, units};

    save_state_1d(st, pot, dir);
    CHECK(fs::exists(dir + "/potential.csv"));
    const auto back = load_state_1d(dir);
    CHECK(back.potential.kind() == Potential1D::Kind::tabulated);
    CHECK(back.potential.table_x() == xs);
    CHECK(back.potential.table_v() == vs);
    CHECK(back.potential(0.5) == pot(0.5));
    CHECK(back.state.units.hbar == 2.0);
    CHECK(back.state.units.mass == 0.5);
    CHECK(back.state.E == 0.75);
}

TEST_CASE("state io: central bundle round-trips, rest and circulating") {
    const Units units{1.0, 1.0};
    const auto pot = CentralPotential::coulomb(1.0);
    const auto rest = solve_central_state(pot, 0, 1, 1, AzimuthalParity::cosine,
                                          RadialGrid(160.0, 8000), PolarGrid(201), units);

    const std::string rest_dir = scratch("io_central_rest");
    save_central_state(rest, pot, rest_dir);
    CHECK(probe_bundle(rest_dir) == BundleKind::central);
    const auto back = load_central_state(rest_dir);

    CHECK(back.state.E() == rest.E());
    CHECK(back.state.alpha_theta_sq() == rest.alpha_theta_sq());
    CHECK(back.state.alpha_phi() == rest.alpha_phi());
    CHECK(back.state.l() == 1);
    CHECK(back.state.m() == 1);
    CHECK(back.state.principal_n() == 2);
    CHECK(back.state.mode() == AzimuthalMode::rest);
    CHECK(back.state.azimuthal.parity == AzimuthalParity::cosine);
    REQUIRE(back.state.radial.R.size() == rest.radial.R.size());
    for (std::size_t i = 0; i < rest.radial.R.size(); ++i)
        CHECK(back.state.radial.R[i] == rest.radial.R[i]);
    REQUIRE(back.state.polar.R.size() == rest.polar.R.size());
    for (std::size_t j = 0; j < rest.polar.R.size(); ++j)
        CHECK(back.state.polar.R[j] == rest.polar.R[j]);
    CHECK(back.potential.kind() == CentralPotential::Kind::coulomb);
    CHECK(back.potential.z() == 1.0);

    // circulating branch keeps its alpha_phi, even a non-quantized one (the
    // loader reconstructs faithfully; judging physicality is verify's job)
    const SeparableCentralState circ{rest.radial, rest.polar,
                                     circulating_azimuthal(1.5, units), units};
    const std::string circ_dir = scratch("io_central_circ");
    save_central_state(circ, pot, circ_dir);
    const auto circ_back = load_central_state(circ_dir);
    CHECK(circ_back.state.mode() == AzimuthalMode::circulating);
    CHECK(circ_back.state.alpha_phi() == 1.5);
    CHECK(circ_back.state.azimuthal.parity == AzimuthalParity::constant);
}

TEST_CASE("state io: corrupt bundles fail with pointed messages") {
    CHECK_THROWS_AS(probe_bundle("io_scratch/definitely_missing"), ConfigError);

    const std::string dir = scratch("io_corrupt");
    std::ofstream(dir + "/state.csv") << "# bundle = 1d-state\n# hbar = 1\n# mass = 1\n"
                                      << "# E = 1\n# nodes = 0\n# x_min = 0\n# x_max = 1\n"
                                      << "# n = 3\n# potential.kind = box\n# potential.a = 1\n"
                                      << "x,R\n0,0\n0.5,oops\n1,0\n";
    try {
        load_state_1d(dir);
        CHECK(false);
    } catch (const ConfigError& e) {
        const std::string what = e.what();
        CHECK(what.find("state.csv:13") != std::string::npos);
        CHECK(what.find("'oops'") != std::string::npos);
    }

    // sample count disagreeing with the declared n
    std::ofstream(dir + "/state.csv", std::ios::trunc)
        << "# bundle = 1d-state\n# hbar = 1\n# mass = 1\n# E = 1\n# nodes = 0\n"
        << "# x_min = 0\n# x_max = 1\n# n = 5\n# potential.kind = box\n# potential.a = 1\n"
        << "x,R\n0,0\n0.5,1\n1,0\n";
    CHECK_THROWS_AS(load_state_1d(dir), ConfigError);

    // missing metadata
    std::ofstream(dir + "/state.csv", std::ios::trunc) << "x,R\n0,0\n";
    CHECK_THROWS_AS(load_state_1d(dir), ConfigError);
}

TEST_CASE("parity and mode names round-trip and reject junk") {
    CHECK(parse_parity(to_string(AzimuthalParity::sine)) == AzimuthalParity::sine);
    CHECK(parse_parity(to_string(AzimuthalParity::cosine)) == AzimuthalParity::cosine);
    CHECK(parse_parity(to_string(AzimuthalParity::constant)) == AzimuthalParity::constant);
    CHECK(parse_mode(to_string(AzimuthalMode::rest)) == AzimuthalMode::rest);
    CHECK(parse_mode(to_string(AzimuthalMode::circulating)) == AzimuthalMode::circulating);
    CHECK_THROWS_AS(parse_parity("triangle"), ConfigError);
    CHECK_THROWS_AS(parse_mode("spinning"), ConfigError);
}
