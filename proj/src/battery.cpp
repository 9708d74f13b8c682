#include "battery.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <filesystem>
#include <map>
#include <random>

#include "central_solver.hpp"
#include "continuity.hpp"
#include "csv.hpp"
#include "dynamics.hpp"
#include "eigensolver_1d.hpp"
#include "operator_ratios.hpp"
#include "quantum_potential.hpp"

namespace fs = std::filesystem;

namespace qnb {

namespace {

constexpr double pi = 3.14159265358979323846;

std::string fmt(double v) { return CsvWriter::format(v); }

void add(BatteryResult& out, int index, std::string name, bool pass, std::string detail) {
    out.criteria.push_back({index, std::move(name), pass, std::move(detail)});
}

int sign_changes(const std::vector<double>& y) {
    int changes = 0;
    double prev = 0.0;
    for (double v : y) {
        if (v == 0.0) continue;
        if (prev != 0.0 && std::signbit(v) != std::signbit(prev)) ++changes;
        prev = v;
    }
    return changes;
}

// One solved hydrogen rest state per (n, l, m), on a window and spacing that
// scale with the principal number (tail length grows like n^2).
struct CentralEntry {
    int n = 0, l = 0, m = 0;
    SeparableCentralState state;
};

std::string nlm_label(int n, int l, int m) {
    return "n" + std::to_string(n) + "l" + std::to_string(l) + "m" + std::to_string(m);
}

const CentralEntry& find_entry(const std::vector<CentralEntry>& family, int n, int l, int m) {
    for (const auto& e : family)
        if (e.n == n && e.l == l && e.m == m) return e;
    throw std::logic_error("battery: missing family entry " + nlm_label(n, l, m));
}

// |measured - exact| and the spread, both against 50*h^2 relative (absolute on
// the natural hbar = 1 scale when the exact value is zero).
struct RatioGate {
    bool pass = false;
    double dev = 0.0;
    double bound = 0.0;
};

RatioGate gate_ratio(const RatioStats& s, double exact) {
    RatioGate g;
    const double scale = exact != 0.0 ? std::fabs(exact) : 1.0;
    g.bound = 50.0 * s.spacing * s.spacing * scale;
    g.dev = std::fabs(s.real_mean - exact);
    g.pass = g.dev <= g.bound && s.real_std <= g.bound && s.imag_mean_abs < 1e-8;
    return g;
}

} // namespace

BatteryResult run_acceptance_battery(const std::string& out_dir, std::uint64_t seed) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create directory '" + out_dir + "': " + ec.message());
    const auto path = [&](const char* name) { return out_dir + "/" + name; };

    BatteryResult out;
    const Units u{1.0, 1.0};

    // ---- shared solves -----------------------------------------------------
    const auto box_pot = Potential1D::box(1.0);
    const Grid1D box_grid(0.0, 1.0, 2001);
    const Grid1D box_fine_grid(0.0, 1.0, 4001);
    ShootingConfig ten;
    ten.max_states = 10;
    const auto box = solve_bound_states_1d(box_pot, box_grid, u, ten);
    const auto box_fine = solve_bound_states_1d(box_pot, box_fine_grid, u, ten);

    const auto harm_pot = Potential1D::harmonic(1.0, u);
    const Grid1D harm_grid(-8.0, 8.0, 2001);
    const auto harm = solve_bound_states_1d(harm_pot, harm_grid, u, ten);

    const auto coul = CentralPotential::coulomb(1.0);
    const PolarGrid pg801(801);
    std::vector<CentralEntry> family;
    for (int n = 1; n <= 3; ++n) {
        const RadialGrid rg(40.0 * n * n, 2000 * n * n);
        for (int l = 0; l < n; ++l)
            for (int m = 0; m <= l; ++m)
                family.push_back({n, l, m,
                                  solve_central_state(coul, n - l - 1, l, m,
                                                      AzimuthalParity::cosine, rg, pg801, u)});
    }
    const auto& s211 = find_entry(family, 2, 1, 1).state;
    const auto& s322 = find_entry(family, 3, 2, 2).state;
    const SeparableCentralState circ211 =
        assemble_state(s211.radial, s211.polar, circulating_azimuthal(1.0 * u.hbar, u));
    const SeparableCentralState circ322 =
        assemble_state(s322.radial, s322.polar, circulating_azimuthal(2.0 * u.hbar, u));

    // ---- 1. box spectrum and eigenfunctions --------------------------------
    {
        CsvWriter w({"n", "E [energy]", "E_exact [energy]", "rel_err [1]",
                     "max_amp_dist [length^(-1/2)]", "nodes"});
        w.comment("particle in a box, width 1, hbar = mass = 1, 2001 samples");
        bool pass = box.states.size() == 10;
        double worst_rel = 0.0, worst_dist = 0.0;
        for (std::size_t k = 0; k < box.states.size(); ++k) {
            const auto& st = box.states[k];
            const double n = double(k + 1);
            const double exact = n * n * pi * pi / 2.0;
            const double rel = std::fabs(st.E - exact) / exact;
            double dist = 0.0;
            for (int i = 0; i < box_grid.n; ++i) {
                const double target = std::sqrt(2.0) * std::sin(n * pi * box_grid.x(i));
                dist = std::max(dist, std::fabs(st.R[std::size_t(i)] - target));
            }
            worst_rel = std::max(worst_rel, rel);
            worst_dist = std::max(worst_dist, dist);
            w.row({n, st.E, exact, rel, dist, double(st.nodes)});
        }
        pass = pass && worst_rel < 1e-6 && worst_dist < 1e-5;
        w.write_file(path("box_spectrum.csv"));
        add(out, 1, "box levels match n^2 pi^2/2 and sine eigenfunctions", pass,
            "10 levels, max |E/E_exact - 1| = " + fmt(worst_rel) +
                " (bound 1e-6), max amplitude distance to sqrt(2) sin(n pi x) = " +
                fmt(worst_dist) + " (bound 1e-5)");
    }

    // ---- 2. excited-state nodes admitted ------------------------------------
    {
        bool pass = box.states.size() >= 2;
        std::string detail = "second box level missing";
        if (pass) {
            const auto& st = box.states[1];
            const double lo = *std::min_element(st.R.begin(), st.R.end());
            const double hi = *std::max_element(st.R.begin(), st.R.end());
            const int crossings = sign_changes(st.R);
            pass = st.nodes == 1 && crossings == 1 && lo < 0.0 && hi > 0.0;
            detail = "second box level: " + std::to_string(st.nodes) +
                     " node recorded, " + std::to_string(crossings) +
                     " sign change sampled, amplitude spans [" + fmt(lo) + ", " + fmt(hi) +
                     "] (positivity is not imposed)";
        }
        add(out, 2, "excited amplitudes keep their nodes and sign changes", pass, detail);
    }

    // ---- 3. quantum potential completes V to E ------------------------------
    {
        CsvWriter w({"n", "E [energy]", "max_rel_2001 [1]", "max_rel_4001 [1]",
                     "improvement [1]"});
        w.comment("box states: max over unmasked samples of |Q + V - E| / |E|");
        const auto V_coarse = box_pot.evaluate(box_grid);
        const auto V_fine = box_pot.evaluate(box_fine_grid);
        bool pass = box.states.size() == 10 && box_fine.states.size() == 10;
        // Residuals below ~1e-6 sit near the finite-difference roundoff floor
        // (eps/h^2 next to the walls, where |R| is tiny), which refinement
        // makes worse, not better — there the clean h^2 factor of 4 is not
        // observable and simple improvement is the honest expectation.
        double worst_coarse = 0.0, worst_clean = 1e300, worst_floor = 1e300;
        double spectrum_coarse = 0.0, spectrum_fine = 0.0;
        for (std::size_t k = 0; k < box.states.size() && pass; ++k) {
            const auto& st = box.states[k];
            const auto& stf = box_fine.states[k];
            const auto qc = quantum_potential_1d(st.R, box_grid, u);
            const auto qf = quantum_potential_1d(stf.R, box_fine_grid, u);
            const auto rc = energy_identity_1d(qc, st.R, V_coarse, st.E, u);
            const auto rf = energy_identity_1d(qf, stf.R, V_fine, stf.E, u);
            const double improvement = rf.max_rel > 0.0 ? rc.max_rel / rf.max_rel : 1e300;
            worst_coarse = std::max(worst_coarse, std::max(rc.max_rel, rf.max_rel));
            spectrum_coarse = std::max(spectrum_coarse, rc.max_rel);
            spectrum_fine = std::max(spectrum_fine, rf.max_rel);
            if (rf.max_rel >= 1e-6)
                worst_clean = std::min(worst_clean, improvement);
            else
                worst_floor = std::min(worst_floor, improvement);
            w.row({double(k + 1), st.E, rc.max_rel, rf.max_rel, improvement});
        }
        const double spectrum_ratio =
            spectrum_fine > 0.0 ? spectrum_coarse / spectrum_fine : 1e300;
        pass = pass && worst_coarse < 1e-4 && worst_clean >= 3.9 && worst_floor >= 1.5 &&
               spectrum_ratio >= 3.9;
        w.write_file(path("identity_box.csv"));

        // soft confinement: the identity holds pointwise under the
        // curvature-scaled tolerance (a flat |E| yardstick is the hard-wall
        // special case, where Q alone carries all of E)
        CsvWriter wh({"n", "E [energy]", "max_rel [1]", "curvature_bound_ok"});
        const auto Vh = harm_pot.evaluate(harm_grid);
        bool harmonic_ok = harm.states.size() == 10;
        for (std::size_t k = 0; k < harm.states.size(); ++k) {
            const auto& st = harm.states[k];
            const auto q = quantum_potential_1d(st.R, harm_grid, u);
            const auto r = energy_identity_1d(q, st.R, Vh, st.E, u);
            harmonic_ok = harmonic_ok && r.within_curvature_bound;
            wh.row({double(k), st.E, r.max_rel, r.within_curvature_bound ? 1.0 : 0.0});
        }
        wh.write_file(path("identity_harmonic.csv"));

        add(out, 3, "Q + V reproduces E pointwise, tightening with the grid",
            pass && harmonic_ok,
            "box: max unmasked |Q+V-E|/|E| = " + fmt(worst_coarse) +
                " (bound 1e-4); refining 2001 -> 4001 divides the spectrum-wide max by " +
                fmt(spectrum_ratio) + " and every residual above the roundoff floor by >= " +
                fmt(worst_clean) + " (bound 3.9; floor-limited states still improve by >= " +
                fmt(worst_floor) + "); harmonic states hold the curvature-scaled " +
                "pointwise bound: " + (harmonic_ok ? "yes" : "no"));
    }

    // ---- 4. harmonic spectrum ------------------------------------------------
    {
        CsvWriter w({"n", "E [energy]", "E_exact [energy]", "rel_err [1]", "nodes"});
        w.comment("harmonic oscillator, omega = 1, window [-8, 8], 2001 samples");
        bool pass = harm.states.size() == 10;
        double worst = 0.0;
        for (std::size_t k = 0; k < harm.states.size(); ++k) {
            const auto& st = harm.states[k];
            const double exact = double(k) + 0.5;
            const double rel = std::fabs(st.E - exact) / exact;
            worst = std::max(worst, rel);
            w.row({double(k), st.E, exact, rel, double(st.nodes)});
        }
        pass = pass && worst < 1e-6;
        w.write_file(path("harmonic_spectrum.csv"));
        add(out, 4, "harmonic levels match (n + 1/2) hbar omega", pass,
            "10 levels, max |E/E_exact - 1| = " + fmt(worst) + " (bound 1e-6)");
    }

    // ---- 5. hydrogen spectrum and l-degeneracy -------------------------------
    {
        CsvWriter w({"n", "l", "E [energy]", "E_exact [energy]", "rel_err [1]"});
        w.comment("coulomb z = 1, radial window 1000 (tails of n = 5), spacing 0.01");
        const RadialGrid hyd_grid(1000.0, 100000);
        bool pass = true;
        double worst = 0.0;
        std::map<int, std::pair<double, double>> spread; // n -> (min E, max E)
        for (int l = 0; l <= 4; ++l) {
            ShootingConfig cfg;
            cfg.max_states = 5 - l;
            const auto rs = solve_radial(coul, double(l * (l + 1)), hyd_grid, u, cfg);
            pass = pass && rs.states.size() == std::size_t(5 - l);
            for (const auto& st : rs.states) {
                const int n = st.nodes + l + 1;
                const double exact = -0.5 / (double(n) * n);
                const double rel = std::fabs(st.E - exact) / std::fabs(exact);
                worst = std::max(worst, rel);
                w.row({double(n), double(l), st.E, exact, rel});
                auto [it, fresh] = spread.try_emplace(n, st.E, st.E);
                if (!fresh) {
                    it->second.first = std::min(it->second.first, st.E);
                    it->second.second = std::max(it->second.second, st.E);
                }
            }
        }
        w.write_file(path("hydrogen_spectrum.csv"));

        CsvWriter wd({"n", "levels", "spread_rel [1]"});
        wd.comment("energy spread across l at fixed n, relative to |E_exact|");
        double worst_spread = 0.0;
        for (const auto& [n, mm] : spread) {
            const double rel = (mm.second - mm.first) * (2.0 * n * n);
            worst_spread = std::max(worst_spread, rel);
            wd.row({double(n), double(std::min(n, 5)), rel});
        }
        wd.write_file(path("hydrogen_degeneracy.csv"));

        pass = pass && worst < 1e-5 && worst_spread < 1e-5;
        add(out, 5, "hydrogen levels match -1/(2 n^2) with l-degeneracy", pass,
            "n = 1..5, all l < n: max |E/E_exact - 1| = " + fmt(worst) +
                " (bound 1e-5), max spread across l = " + fmt(worst_spread) +
                " relative (bound 1e-5)");
    }

    // ---- 6. polar and azimuthal constants ------------------------------------
    {
        CsvWriter w({"l", "m", "alpha_theta_sq [energy*length^2*mass]",
                     "exact [energy*length^2*mass]", "rel_err [1]"});
        w.comment("polar separation constants on 2001 samples; exact = l(l+1) hbar^2");
        const PolarGrid pg(2001);
        bool pass = true;
        double worst = 0.0;
        for (int m = 0; m <= 5; ++m) {
            const auto levels = solve_polar(m, 5, pg, u);
            pass = pass && levels.size() == std::size_t(6 - m);
            for (const auto& ps : levels) {
                const double exact = double(ps.l * (ps.l + 1));
                const double err = exact > 0.0
                                       ? std::fabs(ps.alpha_theta_sq - exact) / exact
                                       : std::fabs(ps.alpha_theta_sq);
                worst = std::max(worst, err);
                w.row({double(ps.l), double(m), ps.alpha_theta_sq, exact, err});
            }
        }
        w.write_file(path("polar_constants.csv"));

        CsvWriter wa({"m", "alpha_phi [action]", "exact [action]", "exact_match"});
        bool az_exact = true;
        for (int m = 0; m <= 5; ++m) {
            const auto az = solve_azimuthal(m, AzimuthalParity::cosine, u);
            const bool same = az.alpha_phi == double(m) * u.hbar;
            az_exact = az_exact && same;
            wa.row({double(m), az.alpha_phi, double(m) * u.hbar, same ? 1.0 : 0.0});
        }
        wa.write_file(path("azimuthal_constants.csv"));

        pass = pass && worst < 1e-8 && az_exact;
        add(out, 6, "angular separation constants quantize to l(l+1) and m", pass,
            "l <= 5, all m: max alpha_theta^2 error = " + fmt(worst) +
                " relative (bound 1e-8); alpha_phi = m hbar exactly: " +
                (az_exact ? "yes" : "no"));
    }

    // ---- 7. continuity holds bound states, flags injected flux ---------------
    {
        CsvWriter w({"state", "mode", "residual_norm", "c_phi", "c_theta", "c_theta_radial",
                     "route_gap", "lambda_r_mean", "lambda_theta_mean", "lambda_phi_mean",
                     "bound", "verdict"});
        w.comment("separated continuity equation over the full (r, theta, phi) sample set");
        const PhiLoop loop(32);
        bool pass = true;
        double worst_res = 0.0, worst_const = 0.0;
        auto record = [&](const std::string& label, const std::string& mode,
                          const ContinuityReport& rep, bool expect_bound) {
            pass = pass && (rep.bound == expect_bound);
            if (expect_bound) {
                worst_res = std::max(worst_res, rep.residual_norm);
                worst_const = std::max({worst_const, std::fabs(rep.constants.c_phi),
                                        std::fabs(rep.constants.c_theta)});
                pass = pass && rep.residual_norm < 1e-10 &&
                       std::fabs(rep.constants.c_phi) < 1e-10 &&
                       std::fabs(rep.constants.c_theta) < 1e-10;
            }
            w.row_text({label, mode, fmt(rep.residual_norm), fmt(rep.constants.c_phi),
                        fmt(rep.constants.c_theta), fmt(rep.constants.c_theta_radial),
                        fmt(rep.constants.route_gap), fmt(rep.lambda_r.mean),
                        fmt(rep.lambda_theta.mean), fmt(rep.lambda_phi.mean),
                        rep.bound ? "1" : "0", rep.verdict});
        };
        for (const auto& e : family)
            record(nlm_label(e.n, e.l, e.m), "rest", continuity_report(e.state, loop), true);
        record("n2l1m1", "circulating", continuity_report(circ211, loop), true);
        record("n3l2m2", "circulating", continuity_report(circ322, loop), true);

        // synthetic violation: a radial flux gradient no bound state can carry
        WGradients bad = w_gradients(s211, loop);
        for (int i = 0; i < s211.radial.grid.n; ++i)
            bad.dWr_dr[std::size_t(i)] = s211.radial.grid.r(i);
        const auto flagged = continuity_report(s211, bad, loop);
        record("n2l1m1+injected_f_r", "synthetic", flagged, false);
        const bool caught = !flagged.bound && flagged.residual_norm > 0.1;
        pass = pass && caught;
        w.write_file(path("continuity_reports.csv"));
        add(out, 7, "continuity residuals vanish for bound states and catch injections", pass,
            "12 bound states: max residual = " + fmt(worst_res) +
                ", max |separation constant| = " + fmt(worst_const) +
                " (bounds 1e-10); injected radial flux raises the residual to " +
                fmt(flagged.residual_norm) + " (must exceed 0.1) and is " +
                (caught ? "flagged" : "missed"));
    }

    // ---- 8. turning-point integral pins c_theta -------------------------------
    {
        CsvWriter w({"check", "boundary_term", "integral_term", "mismatch", "consistent"});
        const auto& rg = s211.radial.grid;
        const PhiLoop loop(32);
        const WGradients zero = w_gradients(s211, loop);
        const auto rad = verify_turning_point_radial(rg, s211.radial.R, zero.dWr_dr, 1.0, 20.0,
                                                     0.0);
        const auto pol = verify_turning_point_polar(s211.polar.grid, s211.polar.R,
                                                    zero.dWth_dth, 0.6, 2.5, 0.0);
        // a constant c_theta = 5 cannot coexist with a flux gradient that
        // vanishes at both window ends: the integral side stays finite
        std::vector<double> g(std::size_t(rg.n), 0.0);
        for (int i = 0; i < rg.n; ++i) {
            const double r = rg.r(i);
            g[std::size_t(i)] = (r - 2.0) * (60.0 - r);
        }
        const auto synth = verify_turning_point_radial(rg, s211.radial.R, g, 2.0, 60.0, 5.0);
        auto record = [&](const std::string& label, const TurningPointCheck& c) {
            w.row_text({label, fmt(c.boundary_term), fmt(c.integral_term), fmt(c.mismatch),
                        c.consistent ? "1" : "0"});
        };
        record("radial_rest", rad);
        record("polar_rest", pol);
        record("radial_c_theta_5", synth);
        w.write_file(path("turning_points.csv"));
        const bool pass = rad.applicable && rad.consistent && rad.boundary_term == 0.0 &&
                          rad.integral_term == 0.0 && pol.applicable && pol.consistent &&
                          pol.boundary_term == 0.0 && pol.integral_term == 0.0 &&
                          synth.applicable && !synth.consistent &&
                          std::fabs(synth.integral_term) > 1e-3;
        add(out, 8, "turning-point integrals force the radial constant to zero", pass,
            "bound state: boundary and integral terms both 0; with c_theta = 5 the "
            "integral side is " +
                fmt(synth.integral_term) + " against a vanishing boundary term (mismatch " +
                fmt(synth.mismatch) + "), flagged inconsistent");
    }

    // ---- 9. operator ratios equal the motion constants ------------------------
    {
        CsvWriter w({"state", "mode", "operator", "predicted", "mean", "std", "max_dev_raw",
                     "imag_mean_abs", "imag_max_raw", "spacing", "samples", "pass"});
        w.comment("(A psi)/psi statistics, |psi|^2-weighted over r^2 sin(theta) dV;");
        w.comment("raw extremes are reported unweighted (coordinate-axis corners magnify");
        w.comment("angular differencing error without bound) and carry no verdict");
        CsvWriter wl({"state", "mode", "constant", "mean_re", "mean_im", "predicted"});
        OperatorRatioConfig oc;
        oc.n_phi = 256;
        bool pass = true;
        auto run_state = [&](const std::string& label, const std::string& mode,
                             const SeparableCentralState& st, int l, int m) {
            const auto rep = operator_ratios(st, coul, oc);
            const RatioGate gh = gate_ratio(rep.hamiltonian, st.E());
            const RatioGate gl = gate_ratio(rep.l_squared, double(l * (l + 1)));
            const RatioGate gz = gate_ratio(rep.lz_squared, double(m) * double(m));
            pass = pass && gh.pass && gl.pass && gz.pass;
            auto row = [&](const char* op, const RatioStats& s, const RatioGate& gate) {
                w.row_text({label, mode, op, fmt(s.predicted_real), fmt(s.real_mean),
                            fmt(s.real_std), fmt(s.real_max_dev), fmt(s.imag_mean_abs),
                            fmt(s.imag_max), fmt(s.spacing), std::to_string(s.samples),
                            gate.pass ? "1" : "0"});
            };
            row("H", rep.hamiltonian, gh);
            row("L^2", rep.l_squared, gl);
            row("Lz^2", rep.lz_squared, gz);

            // Lz itself: an eigen-ratio only when the phase circulates (or the
            // azimuthal factor is flat, m = 0); a standing cos(m phi) factor
            // mixes +m and -m circulation and the ratio varies over the loop
            std::complex<double> mean{0.0, 0.0};
            std::size_t live = 0;
            for (std::size_t k = 0; k < rep.lz_ratio.size(); ++k)
                if (!rep.lz_mask[k]) {
                    mean += rep.lz_ratio[k];
                    ++live;
                }
            if (live > 0) mean /= double(live);
            const bool expect_constant = mode == "circulating" || m == 0;
            bool ok = rep.lz_constant == expect_constant;
            if (expect_constant) {
                const double target = mode == "circulating" ? st.alpha_phi() : 0.0;
                const double hp = 2.0 * pi / double(oc.n_phi);
                ok = ok && std::fabs(mean.real() - target) <=
                               50.0 * hp * hp * std::max(std::fabs(target), 1.0) &&
                     std::fabs(mean.imag()) < 1e-8;
            }
            pass = pass && ok;
            wl.row_text({label, mode, rep.lz_constant ? "1" : "0", fmt(mean.real()),
                         fmt(mean.imag()), fmt(rep.lz_predicted)});
        };
        for (const auto& e : family)
            run_state(nlm_label(e.n, e.l, e.m), "rest", e.state, e.l, e.m);
        run_state("n2l1m1", "circulating", circ211, 1, 1);
        run_state("n3l2m2", "circulating", circ322, 2, 2);
        w.write_file(path("operator_ratios.csv"));
        wl.write_file(path("lz_behavior.csv"));
        add(out, 9, "operator ratios sit at E, l(l+1), m^2 without an eigenvalue postulate",
            pass,
            "hydrogen family through (3,2,2), 256 phi samples: weighted mean and spread of "
            "(H psi)/psi, (L^2 psi)/psi, (Lz^2 psi)/psi within 50 h^2 of the motion "
            "constants, imaginary parts < 1e-8; (Lz psi)/psi constant only for "
            "circulating phases (and flat m = 0 factors)");
    }

    // ---- 10. rest points are fixed points only with Q -------------------------
    {
        CsvWriter w({"model", "route", "points", "passed", "skipped", "max_displacement",
                     "all_pass"});
        w.comment("10^4 steps at dt = 1e-3 from p = 0; pass bound 1e-9 on displacement");
        std::mt19937_64 rng(seed);
        bool pass = true;
        auto record = [&](const std::string& model, const std::string& route,
                          const RestCheckReport& rep) {
            double worst = 0.0;
            for (const auto& p : rep.points)
                if (!p.skipped) worst = std::max(worst, p.displacement);
            w.row_text({model, route, std::to_string(rep.points.size()),
                        std::to_string(rep.passed), std::to_string(rep.skipped), fmt(worst),
                        rep.all_pass ? "1" : "0"});
        };

        {
            std::uniform_real_distribution<double> dx(0.1, 0.9);
            std::vector<double> xs(10);
            for (auto& x : xs) x = dx(rng);
            const ForceModel1D fq(box.states[0], box_pot, QSource::identity);
            const auto rep = rest_check(fq, xs, 1e-3, 10000);
            record("box_ground", "quantum", rep);
            pass = pass && rep.all_pass && rep.passed == 10;
            // no classical control here: the box interior is force-free either
            // way, so a control run cannot separate the routes
        }
        {
            std::uniform_real_distribution<double> dx(-2.0, 2.0);
            std::vector<double> xs(10);
            for (auto& x : xs) x = dx(rng);
            const ForceModel1D fq(harm.states[0], harm_pot, QSource::identity);
            const auto rep = rest_check(fq, xs, 1e-3, 10000);
            record("harmonic_ground", "quantum", rep);
            pass = pass && rep.all_pass && rep.passed == 10;
            const ForceModel1D fc(harm_pot, u);
            const auto ctl = rest_check(fc, xs, 1e-3, 10000);
            record("harmonic_ground", "classical", ctl);
            pass = pass && ctl.passed == 0;
        }
        {
            std::uniform_real_distribution<double> dr(0.8, 12.0), dth(0.5, 2.6),
                dph(0.0, 2.0 * pi);
            std::vector<std::array<double, 3>> pts(10);
            for (auto& p : pts) p = {dr(rng), dth(rng), dph(rng)};
            const ForceModelCentral fq(s211, coul, QSource::identity);
            const auto rep = rest_check(fq, pts, 1e-3, 10000);
            record("hydrogen_n2l1m1", "quantum", rep);
            pass = pass && rep.all_pass && rep.passed == 10;
            const ForceModelCentral fc(coul, u);
            const auto ctl = rest_check(fc, pts, 1e-3, 10000);
            record("hydrogen_n2l1m1", "classical", ctl);
            pass = pass && ctl.passed == 0;
        }
        w.write_file(path("rest_checks.csv"));
        add(out, 10, "eigenstate rest points hold still only under the quantum force", pass,
            "box, harmonic and hydrogen (m = 1) rest states: 10 random interior points "
            "each stay within 1e-9 over 10^4 steps; the classical controls (harmonic, "
            "hydrogen) all drift");
    }

    // ---- 11. phase winding quantization ---------------------------------------
    {
        CsvWriter w({"alpha_phi [action]", "winding [1]", "dist_to_integer [1]"});
        w.comment("loop integral of dS/dphi over one circuit, in units of 2 pi hbar");
        const PhiLoop loop(256);
        bool pass = true;
        double worst_int = 0.0;
        for (int m = 1; m <= 3; ++m) {
            const double wv = action_winding(circulating_azimuthal(double(m) * u.hbar, u),
                                             loop, u);
            const double dist = std::fabs(wv - std::round(wv));
            worst_int = std::max(worst_int, std::max(dist, std::fabs(wv - double(m))));
            w.row({double(m), wv, dist});
        }
        const double w_rest =
            action_winding(solve_azimuthal(2, AzimuthalParity::cosine, u), loop, u);
        w.row({0.0, w_rest, std::fabs(w_rest - std::round(w_rest))});
        worst_int = std::max(worst_int, std::fabs(w_rest));
        const double w_half = action_winding(circulating_azimuthal(1.5 * u.hbar, u), loop, u);
        w.row({1.5, w_half, std::fabs(w_half - std::round(w_half))});
        w.write_file(path("winding.csv"));
        pass = worst_int < 1e-10 && std::fabs(w_half - 1.5) < 1e-10 &&
               std::fabs(w_half - std::round(w_half)) > 1e-10;
        add(out, 11, "single-valuedness shows up as integer phase winding", pass,
            "circulating m = 1..3 and the rest state wind to integers within " +
                fmt(worst_int) + " (bound 1e-10); alpha_phi = 1.5 hbar winds to " +
                fmt(w_half) + " and is flagged non-integer");
    }

    // ---- 12. amplitude-scale invariance ----------------------------------------
    {
        CsvWriter w({"quantity", "c", "measure [1]", "bound [1]", "pass"});
        w.comment("R -> c R must leave Q, the diagnostics and the spectra unchanged.");
        w.comment("Q rows measure max |delta Q| over a one-ulp stencil allowance");
        w.comment("(bound 1); the remaining rows measure plain relative differences");
        w.comment("(bound 1e-12)");
        bool pass = true;
        double worst = 0.0; // largest measure / bound, must stay <= 1
        auto record = [&](const std::string& what, double c, double measure, double bound) {
            const bool ok = measure <= bound;
            pass = pass && ok;
            worst = std::max(worst, measure / bound);
            w.row_text({what, fmt(c), fmt(measure), fmt(bound), ok ? "1" : "0"});
        };

        // Scaling every sample by c rounds each one to an ulp, and the curvature
        // ratio (R[i-1] - 2 R[i] + R[i+1]) / (h^2 R[i]) amplifies that rounding by
        // the stencil magnitude over h^2 |R[i]|.  Q is exactly degree zero in R,
        // but at machine precision it can move by this much per point; the 32x
        // slack also covers the first-derivative terms of the curved coordinates.
        const double ulp = std::numeric_limits<double>::epsilon();
        const double kappa = 0.5 * u.hbar * u.hbar / u.mass;
        auto allowance = [&](const std::vector<double>& R, std::size_t i, double h) {
            const double lo = std::fabs(R[i > 0 ? i - 1 : i]);
            const double mid = std::fabs(R[i]);
            const double hi = std::fabs(R[i + 1 < R.size() ? i + 1 : i]);
            return 32.0 * ulp * kappa * (lo + 2.0 * mid + hi) /
                   (h * h * std::max(mid, 1e-300));
        };
        auto max_over_allowance = [&](const auto& q0, const auto& q1, const auto& mask,
                                      const std::vector<double>& R, double h) {
            double dev = 0.0;
            for (std::size_t i = 0; i < q0.size(); ++i)
                if (!mask[i])
                    dev = std::max(dev, std::fabs(q1[i] - q0[i]) / allowance(R, i, h));
            return dev;
        };

        const auto& bst = box.states[0];
        const auto qb0 = quantum_potential_1d(bst.R, box_grid, u);
        const auto& hst = harm.states[0];
        const auto qh0 = quantum_potential_1d(hst.R, harm_grid, u);
        const auto qs0 = quantum_potential_spherical(s211);
        const PhiLoop loop(32);
        const auto cont0 = continuity_report(s211, loop);
        OperatorRatioConfig oc;
        oc.n_phi = 32;
        const auto rat0 = operator_ratios(s211, coul, oc);

        // Spectrum baselines are re-solved at a tight bisection tolerance so that
        // a scaled run whose bisection path diverges by one branch still lands
        // inside the 1e-12 gate; the scaled runs below share this configuration,
        // and the radial runs all use the same alpha_theta^2 = l(l+1).
        ShootingConfig tight;
        tight.max_states = 10;
        tight.bisection_tol = 1e-13;
        const auto box0 = solve_bound_states_1d(box_pot, box_grid, u, tight);
        const auto harm0 = solve_bound_states_1d(harm_pot, harm_grid, u, tight);
        ShootingConfig tight1 = tight;
        tight1.max_states = 1;
        const auto rad0 = solve_radial(coul, 2.0, s211.radial.grid, u, tight1);

        for (const double c : {-3.0, 0.01, 7.0}) {
            { // 1D quantum potential, hard and soft confinement
                auto scaled = bst.R;
                for (auto& v : scaled) v *= c;
                const auto qb = quantum_potential_1d(scaled, box_grid, u);
                double dev = qb.mask == qb0.mask
                                 ? max_over_allowance(qb0.Q, qb.Q, qb0.mask, bst.R,
                                                      box_grid.spacing())
                                 : 1e300;
                record("Q_box_ground", c, dev, 1.0);

                auto hs = hst.R;
                for (auto& v : hs) v *= c;
                const auto qh = quantum_potential_1d(hs, harm_grid, u);
                dev = qh.mask == qh0.mask
                          ? max_over_allowance(qh0.Q, qh.Q, qh0.mask, hst.R,
                                               harm_grid.spacing())
                          : 1e300;
                record("Q_harmonic_ground", c, dev, 1.0);
            }
            SeparableCentralState scaled = s211;
            for (auto& v : scaled.radial.R) v *= c;
            for (auto& v : scaled.polar.R) v *= c;
            { // separated spherical quantum potential
                const auto qs = quantum_potential_spherical(scaled);
                double dev = 1e300;
                if (qs.mask_r == qs0.mask_r && qs.mask_theta == qs0.mask_theta &&
                    qs.q_phi == qs0.q_phi)
                    dev = std::max(
                        max_over_allowance(qs0.Q_r, qs.Q_r, qs0.mask_r, s211.radial.R,
                                           s211.radial.grid.spacing()),
                        max_over_allowance(qs0.Q_theta, qs.Q_theta, qs0.mask_theta,
                                           s211.polar.R, s211.polar.grid.spacing()));
                record("Q_spherical_n2l1m1", c, dev, 1.0);
            }
            { // continuity diagnostics
                const auto rep = continuity_report(scaled, loop);
                double dev = rep.bound == cont0.bound ? 0.0 : 1.0;
                dev = std::max({dev, std::fabs(rep.residual_norm - cont0.residual_norm),
                                std::fabs(rep.constants.c_phi - cont0.constants.c_phi),
                                std::fabs(rep.constants.c_theta - cont0.constants.c_theta),
                                std::fabs(rep.lambda_r.mean - cont0.lambda_r.mean)});
                record("continuity_n2l1m1", c, dev, 1e-12);
            }
            { // operator ratios
                const auto rep = operator_ratios(scaled, coul, oc);
                const double dev = std::max(
                    {std::fabs(rep.hamiltonian.real_mean - rat0.hamiltonian.real_mean) /
                         std::fabs(s211.E()),
                     std::fabs(rep.l_squared.real_mean - rat0.l_squared.real_mean) /
                         s211.alpha_theta_sq(),
                     std::fabs(rep.lz_squared.real_mean - rat0.lz_squared.real_mean)});
                record("operator_ratios_n2l1m1", c, dev, 1e-12);
            }
            { // spectra through the shooting seed scale
                ShootingConfig cfg = tight;
                cfg.seed_scale = c;
                const auto bs = solve_bound_states_1d(box_pot, box_grid, u, cfg);
                double dev = bs.states.size() == box0.states.size() ? 0.0 : 1e300;
                for (std::size_t k = 0; k < bs.states.size(); ++k)
                    dev = std::max(dev, std::fabs(bs.states[k].E - box0.states[k].E) /
                                            std::fabs(box0.states[k].E));
                record("box_spectrum", c, dev, 1e-12);

                const auto hsol = solve_bound_states_1d(harm_pot, harm_grid, u, cfg);
                dev = hsol.states.size() == harm0.states.size() ? 0.0 : 1e300;
                for (std::size_t k = 0; k < hsol.states.size(); ++k)
                    dev = std::max(dev, std::fabs(hsol.states[k].E - harm0.states[k].E) /
                                            std::fabs(harm0.states[k].E));
                record("harmonic_spectrum", c, dev, 1e-12);

                ShootingConfig rc = tight1;
                rc.seed_scale = c;
                const auto rs = solve_radial(coul, 2.0, s211.radial.grid, u, rc);
                dev = rs.states.size() == 1
                          ? std::fabs(rs.states[0].E - rad0.states[0].E) /
                                std::fabs(rad0.states[0].E)
                          : 1e300;
                record("hydrogen_2p_level", c, dev, 1e-12);
            }
        }
        w.write_file(path("scaling_invariance.csv"));
        add(out, 12, "nothing observable moves under R -> c R", pass,
            "c in {-3, 0.01, 7}: quantum potentials, continuity and ratio diagnostics, "
            "and the box/harmonic/hydrogen spectra all agree with the unscaled run; "
            "largest relative difference " +
                fmt(worst) + " (bound 1e-12)");
    }

    // ---- summary table ---------------------------------------------------------
    {
        CsvWriter w({"index", "name", "pass", "detail"});
        const auto cell = [](std::string s) { // free-text cells must shed the delimiter
            std::replace(s.begin(), s.end(), ',', ';');
            return s;
        };
        int passed = 0;
        for (const auto& c : out.criteria) {
            w.row_text({std::to_string(c.index), cell(c.name), c.pass ? "PASS" : "FAIL",
                        cell(c.detail)});
            if (c.pass) ++passed;
        }
        w.comment(std::to_string(passed) + " of " + std::to_string(out.criteria.size()) +
                  " criteria passed");
        w.write_file(path("acceptance_summary.csv"));
    }

    out.all_pass = std::all_of(out.criteria.begin(), out.criteria.end(),
                               [](const CriterionResult& c) { return c.pass; });
    return out;
}

std::string format_battery_report(const BatteryResult& result) {
    std::string text;
    int passed = 0;
    for (const auto& c : result.criteria) {
        text += c.pass ? "[PASS] " : "[FAIL] ";
        text += std::to_string(c.index) + ". " + c.name + ": " + c.detail + "\n";
        if (c.pass) ++passed;
    }
    text += std::to_string(passed) + "/" + std::to_string(result.criteria.size()) +
            " criteria passed\n";
    return text;
}

} // namespace qnb
