#include "central_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "field.hpp"

namespace qnb {

AzimuthalSolution solve_azimuthal(int m, AzimuthalParity parity, const Units& units) {
    units.validate();
    if (m < 0) throw std::invalid_argument("solve_azimuthal: m must be non-negative");
    if (parity == AzimuthalParity::constant)
        throw std::invalid_argument(
            "solve_azimuthal: constant amplitude is the circulating branch");
    if (parity == AzimuthalParity::sine && m == 0)
        throw std::invalid_argument("solve_azimuthal: sin(0*phi) vanishes identically");
    AzimuthalSolution s;
    s.m = m;
    s.parity = parity;
    s.mode = AzimuthalMode::rest;
    s.alpha_phi = m * units.hbar;
    s.q_phi = s.alpha_phi * s.alpha_phi / (2.0 * units.mass);
    s.units = units;
    return s;
}

AzimuthalSolution circulating_azimuthal(double alpha_phi, const Units& units) {
    units.validate();
    if (!std::isfinite(alpha_phi))
        throw std::invalid_argument("circulating_azimuthal: alpha_phi must be finite");
    AzimuthalSolution s;
    s.m = 0; // no integer label: alpha_phi is free until the winding check
    s.parity = AzimuthalParity::constant;
    s.mode = AzimuthalMode::circulating;
    s.alpha_phi = alpha_phi;
    s.q_phi = 0.0; // constant amplitude has no curvature
    s.units = units;
    return s;
}

namespace {

// Regular pole solution of P'' + [lambda + 1/4 + (1/4 - m^2)/sin^2] P = 0:
// P = theta^(m+1/2) * sum_k a_k theta^(2k). The csc^2 power series feeds the
// coefficient recurrence a_k = -[Lam a_{k-1} + C sum_j d_j a_{k-1-j}]/(4k(k+m)).
double polar_pole_series(double theta, double lambda, int m) {
    static constexpr double d[] = {1.0 / 3.0,   1.0 / 15.0,          2.0 / 189.0,
                                   1.0 / 675.0, 2.0 / 10395.0,       1382.0 / 58046625.0,
                                   4.0 / 1403325.0};
    constexpr int nd = static_cast<int>(sizeof d / sizeof d[0]);
    constexpr int kmax = 40;
    const double C = 0.25 - double(m) * m;
    const double Lam = lambda + 0.25;
    double a[kmax + 1];
    a[0] = 1.0;
    const double t2 = theta * theta;
    double sum = 1.0, power = 1.0;
    for (int k = 1; k <= kmax; ++k) {
        double s = Lam * a[k - 1];
        for (int j = 0; j < std::min(k, nd); ++j) s += C * d[j] * a[k - 1 - j];
        a[k] = -s / (4.0 * k * (k + m));
        power *= t2;
        const double term = a[k] * power;
        sum += term;
        if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    }
    return std::pow(theta, m + 0.5) * sum;
}

} // namespace

std::vector<PolarSolution> solve_polar(int m, int l_max, const PolarGrid& grid,
                                       const Units& units) {
    units.validate();
    if (m < 0) throw std::invalid_argument("solve_polar: m must be non-negative");
    if (l_max < m) throw std::invalid_argument("solve_polar: l_max must be at least m");

    // Transformed amplitude P = R*sqrt(sin theta) obeys the derivative-free
    // form P'' + [lambda + 1/4 + (1/4 - m^2)/sin^2(theta)] P = 0 with
    // lambda = alpha_theta^2/hbar^2, so the one Numerov engine serves here.
    NumerovProblem p;
    p.n = grid.n;
    p.h = grid.spacing();
    p.scale = 1.0;
    p.w.resize(grid.n);
    const double msq = double(m) * m;
    for (int i = 0; i < grid.n; ++i) {
        const double s = std::sin(grid.theta(i));
        p.w[i] = -(0.25 + (0.25 - msq) / (s * s));
    }
    // The half-integer power theta^(m+1/2) defeats the stencil's accuracy
    // near the poles (its high derivatives blow up there), so a band of
    // samples next to each pole comes from the series and the recurrence
    // starts at the band edge. 0.3 rad keeps the series short while pushing
    // the stencil into smooth territory.
    const int band = std::clamp(static_cast<int>(0.3 / p.h), 2, (grid.n - 1) / 2);
    p.seed_len_lo = p.seed_len_hi = band;
    auto seed = [band, grid, m](double lambda) {
        std::vector<double> v(band);
        for (int j = 0; j < band; ++j) v[j] = polar_pole_series(grid.theta(j), lambda, m);
        return v; // theta(j) works for both poles: the grid is symmetric
    };
    p.seed_lo = seed;
    p.seed_hi = seed;

    ShootingConfig cfg;
    cfg.max_states = l_max - m + 1;
    const double lo = m * (m + 1.0) - 0.5;
    const double hi = (l_max + 1.0) * (l_max + 2.0);
    RawSpectrum raw = solve_spectrum_raw(p, cfg, lo, hi, true);

    std::vector<double> sin_theta(grid.n);
    for (int i = 0; i < grid.n; ++i) sin_theta[i] = std::sin(grid.theta(i));

    std::vector<PolarSolution> out;
    for (int k = 0; k < cfg.max_states; ++k) {
        if (k >= static_cast<int>(raw.states.size()) || !raw.states[k].converged) {
            char buf[120];
            std::snprintf(buf, sizeof buf, "solve_polar: level l=%d m=%d did not converge",
                          m + k, m);
            throw SolverError(buf);
        }
        const EigenResult& r = raw.states[k];
        PolarSolution ps;
        ps.l = m + k;
        ps.m = m;
        ps.alpha_theta_sq = r.eigen * units.hbar * units.hbar;
        // The l = 0 level sits exactly at zero (constant amplitude); bisection
        // can land a hair below it, which downstream rightly rejects as an
        // unphysical negative constant. No other level lives near zero, so
        // snapping is unambiguous.
        if (ps.l == 0 && std::fabs(r.eigen) < 1e-6) ps.alpha_theta_sq = 0.0;
        ps.grid = grid;
        ps.R.resize(grid.n);
        for (int i = 0; i < grid.n; ++i) ps.R[i] = r.y[i] / std::sqrt(sin_theta[i]);
        // int R^2 sin = 1 over [0, pi]: the grid stops one spacing short of
        // the poles where the integrand vanishes, so pad with those zeros
        // and use Simpson — a sample-range trapezoid would clip the end
        // caps and bias the amplitudes at O(h^2).
        std::vector<double> g(grid.n + 2, 0.0);
        for (int i = 0; i < grid.n; ++i) g[i + 1] = ps.R[i] * ps.R[i] * sin_theta[i];
        const double inv = 1.0 / std::sqrt(simpson_closed(g, p.h));
        for (double& v : ps.R) v *= inv;
        fix_sign(ps.R);
        ps.units = units;
        out.push_back(std::move(ps));
    }
    return out;
}

RadialSpectrumResult solve_radial(const CentralPotential& potential, double alpha_theta_sq,
                                  const RadialGrid& grid, const Units& units,
                                  const ShootingConfig& config) {
    units.validate();
    if (!(alpha_theta_sq >= 0.0))
        throw std::invalid_argument("solve_radial: alpha_theta_sq must be non-negative");
    if (config.max_states < 1)
        throw std::invalid_argument("solve_radial: max_states must be at least 1");

    NumerovProblem p;
    p.n = grid.n;
    p.h = grid.spacing();
    p.scale = 2.0 * units.mass / (units.hbar * units.hbar);
    p.w.resize(grid.n);
    const double cent = alpha_theta_sq / (2.0 * units.mass);
    for (int i = 0; i < grid.n; ++i) {
        const double r = grid.r(i);
        p.w[i] = potential(r) + cent / (r * r);
    }

    // u = r*R turns the radial operator into u'' + k u = 0 with u(0) = 0.
    // Origin series u ~ r^s (1 + c1 r + c2 r^2): s from the centrifugal
    // indicial equation, c1 from a Coulomb 1/r term, c2 carries the energy.
    const double L = alpha_theta_sq / (units.hbar * units.hbar);
    const double s_exp = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * L));
    const double B = p.scale * potential.coulomb_strength();
    const double c1 = -B / (2.0 * s_exp);
    const double h = p.h;
    const double scale = p.scale;
    p.seed_lo = [h, s_exp, B, c1, scale](double eigen) {
        const double c2 = -(B * c1 + scale * eigen) / (4.0 * s_exp + 2.0);
        auto val = [&](double r) { return std::pow(r, s_exp) * (1.0 + (c1 + c2 * r) * r); };
        return std::vector<double>{val(h), val(2.0 * h)};
    };
    const double h2 = h * h;
    p.seed_hi = [h2](double) { return std::vector<double>{0.0, h2}; };
    p.seed_scale = config.seed_scale;

    double lo, hi;
    if (config.energy_bracket) {
        lo = config.energy_bracket->first;
        hi = config.energy_bracket->second;
    } else {
        const double vmin = *std::min_element(p.w.begin(), p.w.end());
        const double rim = p.w.back(); // confinement rim at r_max
        lo = vmin + 1e-12 * (1.0 + std::fabs(vmin));
        hi = rim - 1e-12 * (1.0 + std::fabs(rim));
        if (!(hi > lo))
            throw std::invalid_argument("solve_radial: effective potential has no "
                                        "confining window on this grid");
    }

    RawSpectrum raw = solve_spectrum_raw(p, config, lo, hi, false);

    RadialSpectrumResult out;
    out.complete = raw.complete;
    out.warnings = std::move(raw.warnings);
    for (EigenResult& r : raw.states) {
        StateConvergence info;
        info.iterations = r.iterations;
        info.residual = r.residual;
        info.converged = r.converged;
        info.matched = r.matched;
        info.boundary_amplitude = r.boundary_amplitude_hi;
        info.decay_ok = info.boundary_amplitude <= config.decay_threshold;
        if (!info.decay_ok) {
            char buf[200];
            std::snprintf(buf, sizeof buf,
                          "radial state with %d nodes rejected: amplitude at r_max %.3e "
                          "above decay threshold %.3e (window too small)",
                          r.nodes, info.boundary_amplitude, config.decay_threshold);
            out.warnings.push_back(buf);
            out.complete = false;
            continue;
        }
        // int u^2 dr = 1 over [0, r_max]; pad with the implicit zero at the
        // origin (the first sample sits at r = h) and use Simpson
        std::vector<double> g(grid.n + 1, 0.0);
        for (int i = 0; i < grid.n; ++i) g[i + 1] = r.y[i] * r.y[i];
        const double inv = 1.0 / std::sqrt(simpson_closed(g, p.h));
        std::vector<double> u(grid.n);
        for (int i = 0; i < grid.n; ++i) u[i] = r.y[i] * inv;
        fix_sign(u);
        RadialSolution rs;
        rs.grid = grid;
        rs.R.resize(grid.n);
        for (int i = 0; i < grid.n; ++i) rs.R[i] = u[i] / grid.r(i);
        rs.E = r.eigen;
        rs.alpha_theta_sq = alpha_theta_sq;
        rs.nodes = r.nodes;
        rs.units = units;
        out.states.push_back(std::move(rs));
        out.info.push_back(info);
    }
    return out;
}

namespace {

void require_same_units(const Units& a, const Units& b, const char* what) {
    if (a.hbar != b.hbar || a.mass != b.mass) {
        char buf[120];
        std::snprintf(buf, sizeof buf, "assemble_state: %s solved with different units", what);
        throw std::invalid_argument(buf);
    }
}

} // namespace

SeparableCentralState assemble_state(const RadialSolution& radial, const PolarSolution& polar,
                                     const AzimuthalSolution& azimuthal) {
    require_same_units(radial.units, polar.units, "radial and polar factors");
    require_same_units(radial.units, azimuthal.units, "radial and azimuthal factors");
    const Units& units = radial.units;

    if (azimuthal.mode == AzimuthalMode::rest) {
        if (polar.m != azimuthal.m)
            throw std::invalid_argument("assemble_state: polar and azimuthal m differ");
    } else {
        // single-valued circulating product needs alpha_phi/hbar equal to the
        // integer the polar factor was solved with
        const double m_eff = azimuthal.alpha_phi / units.hbar;
        if (std::fabs(m_eff - polar.m) > 1e-9 * std::max(1.0, std::fabs(m_eff)))
            throw std::invalid_argument(
                "assemble_state: alpha_phi does not match the polar m (state would be "
                "multivalued)");
    }
    if (polar.l < polar.m)
        throw std::invalid_argument("assemble_state: l must be at least m");

    const double a = radial.alpha_theta_sq, b = polar.alpha_theta_sq;
    const double floor = units.hbar * units.hbar;
    if (std::fabs(a - b) > 1e-6 * std::max({floor, std::fabs(a), std::fabs(b)}))
        throw std::invalid_argument(
            "assemble_state: radial factor was solved with a different alpha_theta_sq");

    SeparableCentralState st;
    st.radial = radial;
    st.polar = polar;
    st.azimuthal = azimuthal;
    st.units = units;
    return st;
}

SeparableCentralState solve_central_state(const CentralPotential& potential, int n_r, int l,
                                          int m, AzimuthalParity parity, const RadialGrid& rgrid,
                                          const PolarGrid& pgrid, const Units& units,
                                          ShootingConfig config) {
    if (n_r < 0) throw std::invalid_argument("solve_central_state: n_r must be non-negative");
    if (l < m) throw std::invalid_argument("solve_central_state: l must be at least m");
    AzimuthalSolution az = solve_azimuthal(m, parity, units);
    std::vector<PolarSolution> pols = solve_polar(m, l, pgrid, units);
    const PolarSolution& pol = pols.at(l - m);
    config.max_states = n_r + 1;
    RadialSpectrumResult rad = solve_radial(potential, pol.alpha_theta_sq, rgrid, units, config);
    if (static_cast<int>(rad.states.size()) <= n_r) {
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "solve_central_state: radial level n_r=%d l=%d not found (%zu of %d "
                      "states resolved)%s",
                      n_r, l, rad.states.size(), n_r + 1,
                      rad.warnings.empty() ? "" : "; see warnings");
        throw SolverError(buf);
    }
    return assemble_state(rad.states[n_r], pol, az);
}

double coulomb_r_max(int n_max, double z, const Units& units) {
    units.validate();
    if (n_max < 1) throw std::invalid_argument("coulomb_r_max: n_max must be positive");
    if (!(z > 0.0)) throw std::invalid_argument("coulomb_r_max: z must be positive");
    const double natural = units.hbar * units.hbar / (units.mass * z);
    return 40.0 * n_max * n_max * natural;
}

} // namespace qnb
