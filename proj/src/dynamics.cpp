#include "dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace qnb {

static const char* source_name(QSource s) {
    switch (s) {
        case QSource::off: return "classical";
        case QSource::identity: return "quantum identity";
        case QSource::sampled: return "quantum sampled";
    }
    return "?";
}

CartesianPoint to_cartesian(const PhasePointCentral& pt, const Units& units) {
    if (!(pt.r > 0.0)) throw std::invalid_argument("to_cartesian: r must be positive");
    const double sth = std::sin(pt.theta), cth = std::cos(pt.theta);
    const double sph = std::sin(pt.phi), cph = std::cos(pt.phi);
    const double m = units.mass;
    CartesianPoint c;
    c.x = {pt.r * sth * cph, pt.r * sth * sph, pt.r * cth};
    const double rdot = pt.p_r / m;
    const double thdot = pt.p_theta / (m * pt.r * pt.r);
    // a polar start (sin theta = 0) is only consistent with p_phi = 0
    const double phdot = pt.p_phi == 0.0 ? 0.0 : pt.p_phi / (m * pt.r * pt.r * sth * sth);
    const double vx = rdot * sth * cph + pt.r * thdot * cth * cph - pt.r * phdot * sth * sph;
    const double vy = rdot * sth * sph + pt.r * thdot * cth * sph + pt.r * phdot * sth * cph;
    const double vz = rdot * cth - pt.r * thdot * sth;
    c.p = {m * vx, m * vy, m * vz};
    return c;
}

PhasePointCentral to_spherical(const CartesianPoint& c, double t, const Units&) {
    const double x = c.x[0], y = c.x[1], z = c.x[2];
    const double px = c.p[0], py = c.p[1], pz = c.p[2];
    const double rho = std::hypot(x, y);
    PhasePointCentral pt;
    pt.t = t;
    pt.r = std::hypot(rho, z);
    pt.theta = std::atan2(rho, z);
    pt.phi = std::atan2(y, x);
    pt.p_r = (x * px + y * py + z * pz) / pt.r;
    pt.p_phi = x * py - y * px;
    // p_theta = m r^2 dtheta/dt with theta = atan2(rho, z)
    pt.p_theta = rho > 0.0 ? z * (x * px + y * py) / rho - rho * pz : 0.0;
    return pt;
}

// --- 1D force model ---------------------------------------------------------

// indices of the 4-point interpolation stencil at x (mirrors the cubic rule)
static std::pair<int, int> stencil_range(double x, double x0, double h, int n) {
    long i = static_cast<long>(std::floor((x - x0) / h)) - 1;
    i = std::clamp(i, 0L, static_cast<long>(n) - 4);
    return {static_cast<int>(i), static_cast<int>(i + 3)};
}

static int nearest_sample(double x, double x0, double h, int n) {
    const long i = std::lround((x - x0) / h);
    return static_cast<int>(std::clamp(i, 0L, static_cast<long>(n) - 1));
}

ForceModel1D::ForceModel1D(const Potential1D& potential, const Units& units)
    : units_(units), source_(QSource::off), potential_(potential),
      lo_(potential.domain_min()), hi_(potential.domain_max()) {
    units_.validate();
}

ForceModel1D::ForceModel1D(const StationaryState1D& state, const Potential1D& potential,
                           QSource source)
    : units_(state.units), source_(source), potential_(potential),
      lo_(state.grid.x_min), hi_(state.grid.x_max), E_(state.E),
      grid_x0_(state.grid.x_min), grid_h_(state.grid.spacing()) {
    units_.validate();
    const QField1D q = quantum_potential_1d(state.R, state.grid, state.units);
    mask_ = q.mask;
    if (source == QSource::sampled) {
        const auto v = potential.evaluate(state.grid);
        q_ = CubicInterpolant{state.grid.x_min, state.grid.spacing(),
                              q_with_continuation(q, v, state.E)};
    }
}

ForceModel1D::ForceModel1D(const Potential1D& potential, const QField1D& q, const Units& units)
    : units_(units), source_(QSource::sampled), potential_(potential), lo_(q.grid.x_min),
      hi_(q.grid.x_max), mask_(q.mask), grid_x0_(q.grid.x_min), grid_h_(q.grid.spacing()),
      arbitrary_amplitude_(true) {
    units_.validate();
    q_ = CubicInterpolant{q.grid.x_min, q.grid.spacing(), q.Q};
}

bool ForceModel1D::inside(double x) const {
    return std::isfinite(x) && x >= lo_ && x <= hi_;
}

bool ForceModel1D::node_masked(double x) const {
    if (mask_.empty()) return false;
    return mask_[nearest_sample(x, grid_x0_, grid_h_, static_cast<int>(mask_.size()))] != 0;
}

double ForceModel1D::force(double x) const {
    switch (source_) {
        case QSource::off:
            return -potential_.slope(x);
        case QSource::identity:
            return 0.0; // d(V+Q)/dx = dE/dx
        case QSource::sampled:
            break;
    }
    if (arbitrary_amplitude_) {
        const auto [a, b] = stencil_range(x, grid_x0_, grid_h_, static_cast<int>(mask_.size()));
        for (int i = a; i <= b; ++i)
            if (mask_[i])
                throw DynamicsError("force query inside a node-exclusion window and no "
                                    "eigenvalue to continue with");
    }
    return -(potential_.slope(x) + q_.slope(x));
}

double ForceModel1D::effective_potential(double x) const {
    switch (source_) {
        case QSource::off:
            return potential_(x);
        case QSource::identity:
            return E_;
        case QSource::sampled:
            break;
    }
    if (arbitrary_amplitude_) {
        const auto [a, b] = stencil_range(x, grid_x0_, grid_h_, static_cast<int>(mask_.size()));
        for (int i = a; i <= b; ++i)
            if (mask_[i])
                throw DynamicsError("potential query inside a node-exclusion window and no "
                                    "eigenvalue to continue with");
    }
    return potential_(x) + q_.value(x);
}

double ForceModel1D::hamiltonian(const PhasePoint1D& pt) const {
    return 0.5 * pt.p * pt.p / units_.mass + effective_potential(pt.x);
}

std::string ForceModel1D::describe() const {
    return potential_.describe() + " | " + source_name(source_);
}

// --- central force model ----------------------------------------------------

ForceModelCentral::ForceModelCentral(const CentralPotential& potential, const Units& units)
    : units_(units), source_(QSource::off), potential_(potential) {
    units_.validate();
}

ForceModelCentral::ForceModelCentral(const SeparableCentralState& state,
                                     const CentralPotential& potential, QSource source)
    : units_(state.units), source_(source), potential_(potential), grid_bounded_(true) {
    units_.validate();
    const auto& rg = state.radial.grid;
    const auto& pg = state.polar.grid;
    r_lo_ = rg.r(0);
    r_hi_ = rg.r(rg.n - 1);
    th_lo_ = pg.theta(0);
    th_hi_ = pg.theta(pg.n - 1);
    r0_ = rg.r(0);
    rh_ = rg.spacing();
    th0_ = pg.theta(0);
    thh_ = pg.spacing();
    E_ = state.E();
    if (state.mode() == AzimuthalMode::circulating)
        kappa_ = 0.5 * state.alpha_phi() * state.alpha_phi() / units_.mass;

    const QFieldSpherical q = quantum_potential_spherical(state);
    mask_r_ = q.mask_r;
    mask_theta_ = q.mask_theta;
    if (source == QSource::sampled) {
        const double ats = state.alpha_theta_sq();
        // the polar equation's 1/sin^2 strength, common to both modes
        const double mu = state.polar.m * units_.hbar;
        std::vector<double> qr = q.Q_r;
        for (int i = 0; i < rg.n; ++i)
            if (mask_r_[i]) {
                const double r = rg.r(i);
                qr[i] = E_ - potential(r) - 0.5 * ats / (units_.mass * r * r);
            }
        std::vector<double> qt = q.Q_theta;
        for (int i = 0; i < pg.n; ++i)
            if (mask_theta_[i]) {
                const double s = std::sin(pg.theta(i));
                qt[i] = 0.5 * (ats - mu * mu / (s * s)) / units_.mass;
            }
        q_r_ = CubicInterpolant{r0_, rh_, std::move(qr)};
        q_theta_ = CubicInterpolant{th0_, thh_, std::move(qt)};
        q_phi_ = state.azimuthal.q_phi;
    }
}

bool ForceModelCentral::inside(double r, double theta) const {
    if (!std::isfinite(r) || !std::isfinite(theta)) return false;
    if (!grid_bounded_) return r > 0.0;
    return r >= r_lo_ && r <= r_hi_ && theta >= th_lo_ && theta <= th_hi_;
}

bool ForceModelCentral::node_masked(double r, double theta) const {
    if (mask_r_.empty()) return false;
    const int ir = nearest_sample(r, r0_, rh_, static_cast<int>(mask_r_.size()));
    const int it = nearest_sample(theta, th0_, thh_, static_cast<int>(mask_theta_.size()));
    return mask_r_[ir] != 0 || mask_theta_[it] != 0;
}

double ForceModelCentral::dU_dr(double r, double theta) const {
    switch (source_) {
        case QSource::off:
            return potential_.slope(r);
        case QSource::identity: {
            if (kappa_ == 0.0) return 0.0;
            const double s = std::sin(theta);
            return 2.0 * kappa_ / (r * r * r * s * s);
        }
        case QSource::sampled:
            break;
    }
    const double s = std::sin(theta);
    double d = potential_.slope(r) + q_r_.slope(r) - 2.0 * q_theta_.value(theta) / (r * r * r);
    if (q_phi_ != 0.0) d -= 2.0 * q_phi_ / (r * r * r * s * s);
    return d;
}

double ForceModelCentral::dU_dtheta(double r, double theta) const {
    switch (source_) {
        case QSource::off:
            return 0.0;
        case QSource::identity: {
            if (kappa_ == 0.0) return 0.0;
            const double s = std::sin(theta);
            return 2.0 * kappa_ * std::cos(theta) / (r * r * s * s * s);
        }
        case QSource::sampled:
            break;
    }
    double d = q_theta_.slope(theta) / (r * r);
    if (q_phi_ != 0.0) {
        const double s = std::sin(theta);
        d -= 2.0 * q_phi_ * std::cos(theta) / (r * r * s * s * s);
    }
    return d;
}

double ForceModelCentral::effective_potential(double r, double theta) const {
    switch (source_) {
        case QSource::off:
            return potential_(r);
        case QSource::identity: {
            if (kappa_ == 0.0) return E_;
            const double s = std::sin(theta);
            return E_ - kappa_ / (r * r * s * s);
        }
        case QSource::sampled:
            break;
    }
    double u = potential_(r) + q_r_.value(r) + q_theta_.value(theta) / (r * r);
    if (q_phi_ != 0.0) {
        const double s = std::sin(theta);
        u += q_phi_ / (r * r * s * s);
    }
    return u;
}

std::array<double, 3> ForceModelCentral::generalized_force(const PhasePointCentral& pt) const {
    const double m = units_.mass;
    const double r = pt.r, s = std::sin(pt.theta), c = std::cos(pt.theta);
    const double lz2 = pt.p_phi * pt.p_phi;
    double fr = pt.p_theta * pt.p_theta / (m * r * r * r) - dU_dr(r, pt.theta);
    double ft = -dU_dtheta(r, pt.theta);
    if (lz2 != 0.0) {
        fr += lz2 / (m * r * r * r * s * s);
        ft += lz2 * c / (m * r * r * s * s * s);
    }
    return {fr, ft, 0.0};
}

double ForceModelCentral::hamiltonian(const PhasePointCentral& pt) const {
    const double m = units_.mass;
    const double r = pt.r, s = std::sin(pt.theta);
    double ke = 0.5 * pt.p_r * pt.p_r / m + 0.5 * pt.p_theta * pt.p_theta / (m * r * r);
    if (pt.p_phi != 0.0) ke += 0.5 * pt.p_phi * pt.p_phi / (m * r * r * s * s);
    return ke + effective_potential(r, pt.theta);
}

std::array<double, 3> ForceModelCentral::force_cartesian(const std::array<double, 3>& pos) const {
    const double x = pos[0], y = pos[1], z = pos[2];
    const double rho = std::hypot(x, y);
    const double r = std::hypot(rho, z);
    const double theta = std::atan2(rho, z);
    const double a = dU_dr(r, theta);       // radial gradient
    const double b = dU_dtheta(r, theta) / r; // transverse gradient
    const double cph = rho > 0.0 ? x / rho : 1.0;
    const double sph = rho > 0.0 ? y / rho : 0.0;
    const double sth = rho / r, cth = z / r;
    // F = -a rhat - b thetahat
    return {-a * sth * cph - b * cth * cph, -a * sth * sph - b * cth * sph,
            -a * cth + b * sth};
}

double ForceModelCentral::potential_at(const std::array<double, 3>& pos) const {
    const double rho = std::hypot(pos[0], pos[1]);
    const double r = std::hypot(rho, pos[2]);
    return effective_potential(r, std::atan2(rho, pos[2]));
}

std::string ForceModelCentral::describe() const {
    std::string s = potential_.describe() + " | " + source_name(source_);
    if (source_ != QSource::off) {
        char buf[48];
        std::snprintf(buf, sizeof buf, " E=%.17g", E_);
        s += buf;
    }
    return s;
}

// --- integration ------------------------------------------------------------

Trajectory1D integrate_canonical(const ForceModel1D& force, const PhasePoint1D& initial,
                                 double dt, int n_steps) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate_canonical: dt must be positive");
    if (n_steps < 1) throw std::invalid_argument("integrate_canonical: need at least one step");
    if (!force.inside(initial.x))
        throw std::invalid_argument("integrate_canonical: initial point outside the domain");

    Trajectory1D out;
    out.dt = dt;
    out.steps_requested = n_steps;
    out.source = force.source();
    out.model = force.describe();
    out.points.reserve(n_steps + 1);
    out.H.reserve(n_steps + 1);

    const double m = force.units().mass;
    double x = initial.x, p = initial.p, t = initial.t;
    double F = force.force(x);
    out.points.push_back({x, p, t});
    out.H.push_back(force.hamiltonian({x, p, t}));
    for (int k = 0; k < n_steps; ++k) {
        const double ph = p + 0.5 * dt * F;
        const double xn = x + dt * ph / m;
        if (!force.inside(xn)) {
            out.exited = true;
            break;
        }
        F = force.force(xn);
        p = ph + 0.5 * dt * F;
        x = xn;
        t += dt;
        out.points.push_back({x, p, t});
        out.H.push_back(force.hamiltonian({x, p, t}));
    }
    return out;
}

TrajectoryCentral integrate_canonical(const ForceModelCentral& force,
                                      const PhasePointCentral& initial, double dt, int n_steps) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate_canonical: dt must be positive");
    if (n_steps < 1) throw std::invalid_argument("integrate_canonical: need at least one step");
    if (!force.inside(initial.r, initial.theta))
        throw std::invalid_argument("integrate_canonical: initial point outside the domain");

    TrajectoryCentral out;
    out.dt = dt;
    out.steps_requested = n_steps;
    out.source = force.source();
    out.model = force.describe();
    out.points.reserve(n_steps + 1);
    out.H.reserve(n_steps + 1);

    const double m = force.units().mass;
    CartesianPoint c = to_cartesian(initial, force.units());
    double t = initial.t;
    const auto record = [&] {
        out.points.push_back(to_spherical(c, t, force.units()));
        const double ke =
            0.5 * (c.p[0] * c.p[0] + c.p[1] * c.p[1] + c.p[2] * c.p[2]) / m;
        out.H.push_back(ke + force.potential_at(c.x));
    };
    std::array<double, 3> F = force.force_cartesian(c.x);
    record();
    for (int k = 0; k < n_steps; ++k) {
        std::array<double, 3> ph, xn;
        for (int i = 0; i < 3; ++i) ph[i] = c.p[i] + 0.5 * dt * F[i];
        for (int i = 0; i < 3; ++i) xn[i] = c.x[i] + dt * ph[i] / m;
        const double rho = std::hypot(xn[0], xn[1]);
        if (!force.inside(std::hypot(rho, xn[2]), std::atan2(rho, xn[2]))) {
            out.exited = true;
            break;
        }
        F = force.force_cartesian(xn);
        for (int i = 0; i < 3; ++i) c.p[i] = ph[i] + 0.5 * dt * F[i];
        c.x = xn;
        t += dt;
        record();
    }
    return out;
}

// --- diagnostics on trajectories --------------------------------------------

EnergyDrift energy_drift(std::span<const double> H, double dt) {
    if (H.size() < 2) throw std::invalid_argument("energy_drift: need at least 2 recorded steps");
    if (!(dt > 0.0)) throw std::invalid_argument("energy_drift: dt must be positive");
    EnergyDrift d;
    for (double h : H) d.max_abs = std::max(d.max_abs, std::fabs(h - H[0]));
    if (H.size() >= 4) {
        d.dH_dt = derivative(H, dt);
    } else {
        // too short for the 4-point end stencils; fall back to 2-point slopes
        const std::size_t n = H.size();
        d.dH_dt.resize(n);
        d.dH_dt[0] = (H[1] - H[0]) / dt;
        for (std::size_t i = 1; i + 1 < n; ++i) d.dH_dt[i] = (H[i + 1] - H[i - 1]) / (2.0 * dt);
        d.dH_dt[n - 1] = (H[n - 1] - H[n - 2]) / dt;
    }
    return d;
}

RestCheckReport rest_check(const ForceModel1D& force, std::span<const double> xs, double dt,
                           int n_steps, double tolerance) {
    RestCheckReport rep;
    rep.tolerance = tolerance;
    rep.dt = dt;
    rep.n_steps = n_steps;
    rep.points.reserve(xs.size());
    for (const double x0 : xs) {
        RestPointResult res;
        if (!force.inside(x0)) {
            res.skipped = true;
            res.note = "sample outside the domain";
            ++rep.skipped;
        } else if (force.node_masked(x0)) {
            res.skipped = true;
            res.note = "sample inside a node-exclusion window";
            ++rep.skipped;
        } else {
            const auto tr = integrate_canonical(force, {x0, 0.0, 0.0}, dt, n_steps);
            for (const auto& pt : tr.points)
                res.displacement = std::max(res.displacement, std::fabs(pt.x - x0));
            res.exited = tr.exited;
            if (tr.exited) res.note = "trajectory left the domain";
            res.pass = !tr.exited && res.displacement < tolerance;
            if (res.pass) ++rep.passed;
        }
        rep.points.push_back(std::move(res));
    }
    rep.all_pass = rep.passed > 0 &&
                   rep.passed + rep.skipped == static_cast<int>(rep.points.size());
    return rep;
}

RestCheckReport rest_check(const ForceModelCentral& force,
                           std::span<const std::array<double, 3>> points, double dt, int n_steps,
                           double tolerance) {
    RestCheckReport rep;
    rep.tolerance = tolerance;
    rep.dt = dt;
    rep.n_steps = n_steps;
    rep.points.reserve(points.size());
    for (const auto& q : points) {
        RestPointResult res;
        if (!force.inside(q[0], q[1])) {
            res.skipped = true;
            res.note = "sample outside the domain";
            ++rep.skipped;
        } else if (force.node_masked(q[0], q[1])) {
            res.skipped = true;
            res.note = "sample inside a node-exclusion window";
            ++rep.skipped;
        } else {
            const PhasePointCentral start{q[0], q[1], q[2], 0.0, 0.0, 0.0, 0.0};
            const auto tr = integrate_canonical(force, start, dt, n_steps);
            const CartesianPoint c0 = to_cartesian(start, force.units());
            for (const auto& pt : tr.points) {
                const CartesianPoint c = to_cartesian(pt, force.units());
                const double dx = c.x[0] - c0.x[0], dy = c.x[1] - c0.x[1],
                             dz = c.x[2] - c0.x[2];
                res.displacement =
                    std::max(res.displacement, std::sqrt(dx * dx + dy * dy + dz * dz));
            }
            res.exited = tr.exited;
            if (tr.exited) res.note = "trajectory left the domain";
            res.pass = !tr.exited && res.displacement < tolerance;
            if (res.pass) ++rep.passed;
        }
        rep.points.push_back(std::move(res));
    }
    rep.all_pass = rep.passed > 0 &&
                   rep.passed + rep.skipped == static_cast<int>(rep.points.size());
    return rep;
}

} // namespace qnb
