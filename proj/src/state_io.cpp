#include "state_io.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>

#include "central_solver.hpp"
#include "config.hpp"
#include "csv.hpp"

namespace fs = std::filesystem;

namespace qnb {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.push_back(line.substr(start));
            return cells;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

// One CSV of a bundle: '# key = value' metadata plus numeric columns.
struct CsvTable {
    std::string path;
    std::map<std::string, std::string> meta;
    std::vector<std::vector<double>> columns;
};

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open");
    CsvTable t;
    t.path = path;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        if (line.front() == '#') {
            const std::string body = line.substr(1);
            const auto eq = body.find('=');
            if (eq == std::string::npos) continue; // free-text comment
            const std::string key = trim(body.substr(0, eq));
            if (!key.empty()) t.meta[key] = trim(body.substr(eq + 1));
            continue;
        }
        if (!header_seen) { // the column-naming header row
            header_seen = true;
            t.columns.resize(split_cells(line).size());
            continue;
        }
        const auto cells = split_cells(line);
        if (cells.size() != t.columns.size())
            throw ConfigError(path + ":" + std::to_string(line_no) + ": row has " +
                              std::to_string(cells.size()) + " cells, header names " +
                              std::to_string(t.columns.size()));
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const std::string cell = trim(cells[c]);
            errno = 0;
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (cell.empty() || end != cell.c_str() + cell.size() || errno == ERANGE)
                throw ConfigError(path + ":" + std::to_string(line_no) + ": cell '" + cell +
                                  "' is not a number");
            t.columns[c].push_back(v);
        }
    }
    if (!header_seen) throw ConfigError(path + ": no column header row");
    return t;
}

const std::string& meta_get(const CsvTable& t, const std::string& key) {
    const auto it = t.meta.find(key);
    if (it == t.meta.end())
        throw ConfigError(t.path + ": missing metadata key '" + key + "'");
    return it->second;
}

double meta_double(const CsvTable& t, const std::string& key) {
    const std::string& text = meta_get(t, key);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE)
        throw ConfigError(t.path + ": metadata '" + key + " = " + text + "' is not a number");
    return v;
}

int meta_int(const CsvTable& t, const std::string& key) {
    const std::string& text = meta_get(t, key);
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(text.c_str(), &end, 10);
    if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE)
        throw ConfigError(t.path + ": metadata '" + key + " = " + text + "' is not an integer");
    return static_cast<int>(v);
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
}

void meta_number(CsvWriter& w, const std::string& key, double value) {
    w.comment(key + " = " + CsvWriter::format(value));
}

void write_units_meta(CsvWriter& w, const Units& units) {
    meta_number(w, "hbar", units.hbar);
    meta_number(w, "mass", units.mass);
}

Units read_units_meta(const CsvTable& t) {
    return Units{meta_double(t, "hbar"), meta_double(t, "mass")};
}

void write_table_csv(const std::string& path, const std::string& abscissa,
                     const std::vector<double>& xs, const std::vector<double>& vs) {
    CsvWriter w({abscissa + " [length]", "V [energy]"});
    w.comment("tabulated potential samples, interpolated linearly between rows");
    for (std::size_t i = 0; i < xs.size(); ++i) w.row({xs[i], vs[i]});
    w.write_file(path);
}

void write_potential_meta_1d(CsvWriter& w, const Potential1D& p, const std::string& dir) {
    switch (p.kind()) {
        case Potential1D::Kind::box:
            w.comment("potential.kind = box");
            meta_number(w, "potential.a", p.width());
            break;
        case Potential1D::Kind::harmonic:
            w.comment("potential.kind = harmonic");
            meta_number(w, "potential.omega", p.omega());
            break;
        case Potential1D::Kind::finite_well:
            w.comment("potential.kind = finite_well");
            meta_number(w, "potential.v0", p.depth());
            meta_number(w, "potential.a", p.width());
            break;
        case Potential1D::Kind::tabulated:
            w.comment("potential.kind = tabulated");
            write_table_csv(dir + "/potential.csv", "x", p.table_x(), p.table_v());
            break;
    }
}

Potential1D read_potential_1d(const CsvTable& t, const std::string& dir, const Units& units) {
    const std::string& kind = meta_get(t, "potential.kind");
    if (kind == "box") return Potential1D::box(meta_double(t, "potential.a"));
    if (kind == "harmonic") return Potential1D::harmonic(meta_double(t, "potential.omega"), units);
    if (kind == "finite_well")
        return Potential1D::finite_well(meta_double(t, "potential.v0"),
                                        meta_double(t, "potential.a"));
    if (kind == "tabulated") {
        const CsvTable table = read_csv(dir + "/potential.csv");
        if (table.columns.size() != 2)
            throw ConfigError(table.path + ": expected two columns (abscissa, V)");
        return Potential1D::tabulated(table.columns[0], table.columns[1]);
    }
    throw ConfigError(t.path + ": unknown potential.kind '" + kind + "'");
}

void write_potential_meta_central(CsvWriter& w, const CentralPotential& p,
                                  const std::string& dir) {
    switch (p.kind()) {
        case CentralPotential::Kind::coulomb:
            w.comment("potential.kind = coulomb");
            meta_number(w, "potential.z", p.z());
            break;
        case CentralPotential::Kind::harmonic3d:
            w.comment("potential.kind = harmonic3d");
            meta_number(w, "potential.omega", p.omega());
            break;
        case CentralPotential::Kind::tabulated:
            w.comment("potential.kind = tabulated");
            write_table_csv(dir + "/potential.csv", "r", p.table_r(), p.table_v());
            break;
    }
}

CentralPotential read_potential_central(const CsvTable& t, const std::string& dir,
                                        const Units& units) {
    const std::string& kind = meta_get(t, "potential.kind");
    if (kind == "coulomb") return CentralPotential::coulomb(meta_double(t, "potential.z"));
    if (kind == "harmonic3d")
        return CentralPotential::harmonic3d(meta_double(t, "potential.omega"), units);
    if (kind == "tabulated") {
        const CsvTable table = read_csv(dir + "/potential.csv");
        if (table.columns.size() != 2)
            throw ConfigError(table.path + ": expected two columns (abscissa, V)");
        return CentralPotential::tabulated(table.columns[0], table.columns[1]);
    }
    throw ConfigError(t.path + ": unknown potential.kind '" + kind + "'");
}

} // namespace

std::string to_string(AzimuthalParity parity) {
    switch (parity) {
        case AzimuthalParity::cosine: return "cosine";
        case AzimuthalParity::sine: return "sine";
        case AzimuthalParity::constant: return "constant";
    }
    return "constant";
}

std::string to_string(AzimuthalMode mode) {
    return mode == AzimuthalMode::rest ? "rest" : "circulating";
}

AzimuthalParity parse_parity(const std::string& text) {
    if (text == "cosine") return AzimuthalParity::cosine;
    if (text == "sine") return AzimuthalParity::sine;
    if (text == "constant") return AzimuthalParity::constant;
    throw ConfigError("unknown azimuthal parity '" + text +
                      "' (expected cosine, sine, or constant)");
}

AzimuthalMode parse_mode(const std::string& text) {
    if (text == "rest") return AzimuthalMode::rest;
    if (text == "circulating") return AzimuthalMode::circulating;
    throw ConfigError("unknown azimuthal mode '" + text + "' (expected rest or circulating)");
}

BundleKind probe_bundle(const std::string& dir) {
    if (fs::exists(fs::path(dir) / "state.csv")) return BundleKind::one_dimensional;
    if (fs::exists(fs::path(dir) / "radial.csv") && fs::exists(fs::path(dir) / "polar.csv"))
        return BundleKind::central;
    throw ConfigError("'" + dir +
                      "' is not a state bundle (expected state.csv, or radial.csv + polar.csv)");
}

void save_state_1d(const StationaryState1D& state, const Potential1D& potential,
                   const std::string& dir) {
    ensure_dir(dir);
    CsvWriter w({"x [length]", "R [length^(-1/2)]"});
    w.comment("bundle = 1d-state");
    write_units_meta(w, state.units);
    meta_number(w, "E", state.E);
    w.comment("nodes = " + std::to_string(state.nodes));
    meta_number(w, "x_min", state.grid.x_min);
    meta_number(w, "x_max", state.grid.x_max);
    w.comment("n = " + std::to_string(state.grid.n));
    write_potential_meta_1d(w, potential, dir);
    for (int i = 0; i < state.grid.n; ++i) w.row({state.grid.x(i), state.R[std::size_t(i)]});
    w.write_file(dir + "/state.csv");
}

Loaded1D load_state_1d(const std::string& dir) {
    const CsvTable t = read_csv(dir + "/state.csv");
    if (meta_get(t, "bundle") != "1d-state")
        throw ConfigError(t.path + ": not a 1d state bundle");
    if (t.columns.size() != 2) throw ConfigError(t.path + ": expected two columns (x, R)");
    const Units units = read_units_meta(t);
    const Grid1D grid(meta_double(t, "x_min"), meta_double(t, "x_max"), meta_int(t, "n"));
    if (t.columns[1].size() != std::size_t(grid.n))
        throw ConfigError(t.path + ": " + std::to_string(t.columns[1].size()) +
                          " samples do not match n = " + std::to_string(grid.n));
    StationaryState1D state{grid, t.columns[1], meta_double(t, "E"), meta_int(t, "nodes"), units};
    return Loaded1D{std::move(state), read_potential_1d(t, dir, units)};
}

void save_central_state(const SeparableCentralState& state, const CentralPotential& potential,
                        const std::string& dir) {
    ensure_dir(dir);
    {
        CsvWriter w({"r [length]", "R [length^(-3/2)]"});
        w.comment("bundle = central-radial");
        write_units_meta(w, state.units);
        meta_number(w, "E", state.radial.E);
        w.comment("nodes = " + std::to_string(state.radial.nodes));
        meta_number(w, "alpha_theta_sq", state.radial.alpha_theta_sq);
        meta_number(w, "r_max", state.radial.grid.r_max);
        w.comment("n = " + std::to_string(state.radial.grid.n));
        w.comment("az.m = " + std::to_string(state.azimuthal.m));
        meta_number(w, "az.alpha_phi", state.azimuthal.alpha_phi);
        w.comment("az.parity = " + to_string(state.azimuthal.parity));
        w.comment("az.mode = " + to_string(state.azimuthal.mode));
        write_potential_meta_central(w, potential, dir);
        for (int i = 0; i < state.radial.grid.n; ++i)
            w.row({state.radial.grid.r(i), state.radial.R[std::size_t(i)]});
        w.write_file(dir + "/radial.csv");
    }
    {
        CsvWriter w({"theta [rad]", "R [1]"});
        w.comment("bundle = central-polar");
        w.comment("l = " + std::to_string(state.polar.l));
        w.comment("m = " + std::to_string(state.polar.m));
        meta_number(w, "alpha_theta_sq", state.polar.alpha_theta_sq);
        w.comment("n = " + std::to_string(state.polar.grid.n));
        for (int j = 0; j < state.polar.grid.n; ++j)
            w.row({state.polar.grid.theta(j), state.polar.R[std::size_t(j)]});
        w.write_file(dir + "/polar.csv");
    }
}

LoadedCentral load_central_state(const std::string& dir) {
    const CsvTable rt = read_csv(dir + "/radial.csv");
    if (meta_get(rt, "bundle") != "central-radial")
        throw ConfigError(rt.path + ": not a central radial table");
    if (rt.columns.size() != 2) throw ConfigError(rt.path + ": expected two columns (r, R)");
    const Units units = read_units_meta(rt);
    const RadialGrid rgrid(meta_double(rt, "r_max"), meta_int(rt, "n"));
    if (rt.columns[1].size() != std::size_t(rgrid.n))
        throw ConfigError(rt.path + ": " + std::to_string(rt.columns[1].size()) +
                          " samples do not match n = " + std::to_string(rgrid.n));
    RadialSolution radial{rgrid, rt.columns[1], meta_double(rt, "E"),
                          meta_double(rt, "alpha_theta_sq"), meta_int(rt, "nodes"), units};

    const CsvTable pt = read_csv(dir + "/polar.csv");
    if (meta_get(pt, "bundle") != "central-polar")
        throw ConfigError(pt.path + ": not a central polar table");
    if (pt.columns.size() != 2) throw ConfigError(pt.path + ": expected two columns (theta, R)");
    const PolarGrid pgrid(meta_int(pt, "n"));
    if (pt.columns[1].size() != std::size_t(pgrid.n))
        throw ConfigError(pt.path + ": " + std::to_string(pt.columns[1].size()) +
                          " samples do not match n = " + std::to_string(pgrid.n));
    PolarSolution polar{meta_int(pt, "l"), meta_int(pt, "m"), meta_double(pt, "alpha_theta_sq"),
                        pgrid, pt.columns[1], units};

    const AzimuthalMode mode = parse_mode(meta_get(rt, "az.mode"));
    const AzimuthalSolution azimuthal =
        mode == AzimuthalMode::circulating
            ? circulating_azimuthal(meta_double(rt, "az.alpha_phi"), units)
            : solve_azimuthal(meta_int(rt, "az.m"), parse_parity(meta_get(rt, "az.parity")),
                              units);

    // Reassembled by hand rather than through the solver-side constructor: a
    // saved state comes back exactly as written, including deliberately
    // unphysical circulation that the verify diagnostics are meant to judge.
    if (polar.l < polar.m)
        throw ConfigError(pt.path + ": l < m");
    if (radial.alpha_theta_sq != polar.alpha_theta_sq)
        throw ConfigError(dir + ": radial and polar alpha_theta_sq disagree");
    SeparableCentralState state{std::move(radial), std::move(polar), azimuthal, units};
    return LoadedCentral{std::move(state), read_potential_central(rt, dir, units)};
}

} // namespace qnb
