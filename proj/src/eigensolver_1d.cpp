#include "eigensolver_1d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "field.hpp"

namespace qnb {

namespace {

NumerovProblem make_problem_1d(const Potential1D& potential, const Grid1D& grid,
                               const Units& units, double seed_scale) {
    units.validate();
    if (potential.hard_walls()) {
        // hard walls are Dirichlet conditions at the grid ends; the grid must
        // span exactly [0, a]
        const double a = potential.width();
        const double tol = 1e-12 * a;
        if (std::fabs(grid.x_min) > tol || std::fabs(grid.x_max - a) > tol)
            throw std::invalid_argument("solve: box potential requires the grid to span [0, a]");
    }
    NumerovProblem p;
    p.n = grid.n;
    p.h = grid.spacing();
    p.scale = 2.0 * units.mass / (units.hbar * units.hbar);
    p.w = potential.evaluate(grid);
    p.seed_scale = seed_scale;
    const double h2 = p.h * p.h;
    // R = 0 at the boundary sample, slope h one step in (scale is arbitrary)
    p.seed_lo = [h2](double) { return std::vector<double>{0.0, h2}; };
    p.seed_hi = [h2](double) { return std::vector<double>{0.0, h2}; };
    return p;
}

std::string fmt_warning(const char* fmt, int a, int b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, fmt, a, b);
    return buf;
}

} // namespace

ShotResult1D shoot(const Potential1D& potential, double E, const Grid1D& grid,
                   const Units& units, ShootDirection direction, int match_index) {
    NumerovProblem p = make_problem_1d(potential, grid, units, 1.0);
    if (match_index < 0) match_index = (direction == ShootDirection::forward) ? grid.n - 1 : 0;
    const Shot s = numerov_shoot(p, E, direction, match_index);
    return ShotResult1D{s.y, s.log_derivative, s.nodes};
}

RawSpectrum solve_spectrum_raw(const NumerovProblem& problem, const ShootingConfig& config,
                               double lo, double hi, bool extendable_hi) {
    if (config.max_states < 1)
        throw std::invalid_argument("solve: max_states must be at least 1");
    if (!(hi > lo)) throw std::invalid_argument("solve: empty energy bracket");

    RawSpectrum out;
    EigenSolveConfig ecfg;
    ecfg.bisection_tol = config.bisection_tol;
    ecfg.match_fraction = config.match_point;

    const int n_lo = numerov_nodes(problem, lo);
    int n_hi = numerov_nodes(problem, hi);
    if (extendable_hi) {
        int doublings = 0;
        while (n_hi < n_lo + config.max_states && doublings < 60) {
            hi = lo + 2.0 * (hi - lo);
            n_hi = numerov_nodes(problem, hi);
            ++doublings;
        }
    }

    const int available = n_hi - n_lo;
    const int wanted = config.max_states;
    if (available < wanted) {
        out.complete = false;
        out.warnings.push_back(
            fmt_warning("energy bracket contains %d of %d requested states", available, wanted));
    }

    double from = lo;
    for (int k = 0; k < std::min(available, wanted); ++k) {
        const int target = n_lo + k;
        EigenResult r = numerov_eigen(problem, from, hi, target, ecfg);
        if (!r.converged)
            out.warnings.push_back(fmt_warning("state %d: bisection did not converge (%d iterations)",
                                               target, r.iterations));
        // next bracket starts just above this eigenvalue
        from = r.eigen + 4.0 * config.bisection_tol * std::max(std::fabs(r.eigen), 1.0);
        out.states.push_back(std::move(r));
    }
    return out;
}

SpectrumResult1D solve_bound_states_1d(const Potential1D& potential, const Grid1D& grid,
                                       const Units& units, const ShootingConfig& config) {
    NumerovProblem problem = make_problem_1d(potential, grid, units, config.seed_scale);

    const bool hard = potential.hard_walls();
    const double vmin = *std::min_element(problem.w.begin(), problem.w.end());
    double lo, hi;
    bool extendable = false;
    if (config.energy_bracket) {
        lo = config.energy_bracket->first;
        hi = config.energy_bracket->second;
    } else if (hard) {
        lo = vmin + 1e-12 * (1.0 + std::fabs(vmin));
        // crude box estimate of the window; the raw loop doubles it as needed
        const double L = grid.x_max - grid.x_min;
        const double unit = 0.5 * units.hbar * units.hbar / units.mass *
                            std::pow(std::numbers::pi / L, 2);
        hi = vmin + unit * std::pow(config.max_states + 1.0, 2);
        extendable = true;
    } else {
        // bound states live below the confinement rim
        const double rim = std::min(problem.w.front(), problem.w.back());
        lo = vmin + 1e-12 * (1.0 + std::fabs(vmin));
        hi = rim - 1e-12 * (1.0 + std::fabs(rim));
        if (!(hi > lo))
            throw std::invalid_argument("solve: potential has no confining window");
    }

    RawSpectrum raw = solve_spectrum_raw(problem, config, lo, hi, extendable);

    SpectrumResult1D out;
    out.complete = raw.complete;
    out.warnings = std::move(raw.warnings);
    for (EigenResult& r : raw.states) {
        StateConvergence info;
        info.iterations = r.iterations;
        info.residual = r.residual;
        info.converged = r.converged;
        info.matched = r.matched;
        if (!hard) {
            info.boundary_amplitude = std::max(r.boundary_amplitude_lo, r.boundary_amplitude_hi);
            info.decay_ok = info.boundary_amplitude <= config.decay_threshold;
        }
        if (!info.decay_ok) {
            char buf[200];
            std::snprintf(buf, sizeof buf,
                          "state with %d nodes rejected: boundary amplitude %.3e above decay "
                          "threshold %.3e (non-confining window)",
                          r.nodes, info.boundary_amplitude, config.decay_threshold);
            out.warnings.push_back(buf);
            out.complete = false;
            continue;
        }
        StationaryState1D st;
        st.grid = grid;
        st.R = normalize(r.y, grid.spacing());
        st.E = r.eigen;
        st.nodes = r.nodes;
        st.units = units;
        out.states.push_back(std::move(st));
        out.info.push_back(info);
    }
    return out;
}

} // namespace qnb
