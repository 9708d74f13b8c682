#include "classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "numerov.hpp" // SolverError

namespace qnb {

ClassicalOrbitReport classical_reference(const CentralPotential& potential, double E, double l,
                                         const Units& units, ClassicalOrbitConfig cfg) {
    units.validate();
    if (!(l >= 0.0)) throw std::invalid_argument("classical_reference: l must be nonnegative");
    if (!(cfg.alpha_phi_fraction >= 0.0) || !(cfg.alpha_phi_fraction <= 1.0))
        throw std::invalid_argument("classical_reference: alpha_phi fraction outside [0, 1]");
    if (!(cfg.dt > 0.0) || cfg.n_steps < 1 || !(cfg.r_window_lo > 0.0) ||
        !(cfg.r_window_hi > cfg.r_window_lo))
        throw std::invalid_argument("classical_reference: bad orbit configuration");

    ClassicalOrbitReport rep;
    rep.E = E;
    rep.l = l;
    rep.alpha_theta_sq = l * l;
    rep.alpha_phi = cfg.alpha_phi_fraction * l;

    const double m = units.mass;
    // p_r^2 as a function of r; the orbit lives where it is nonnegative
    const auto pr2 = [&](double r) {
        return 2.0 * m * (E - potential(r)) - l * l / (r * r);
    };

    // locate the classically allowed band on a log-spaced scan
    const int n_scan = 4096;
    const double la = std::log(cfg.r_window_lo), lb = std::log(cfg.r_window_hi);
    int i_peak = 0;
    double f_peak = -std::numeric_limits<double>::infinity();
    const auto r_at = [&](int i) { return std::exp(la + (lb - la) * i / (n_scan - 1)); };
    for (int i = 0; i < n_scan; ++i) {
        const double f = pr2(r_at(i));
        if (f > f_peak) {
            f_peak = f;
            i_peak = i;
        }
    }
    // sharpen the band maximum by golden section — the log scan is too coarse
    // to separate "barely negative near a circular radius" from "no orbit"
    double r_peak = r_at(i_peak);
    {
        double a = r_at(std::max(0, i_peak - 1));
        double b = r_at(std::min(n_scan - 1, i_peak + 1));
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
        double f1 = pr2(c1), f2 = pr2(c2);
        for (int it = 0; it < 200 && b - a > 1e-14 * b; ++it) {
            if (f1 < f2) {
                a = c1, c1 = c2, f1 = f2;
                c2 = a + gr * (b - a), f2 = pr2(c2);
            } else {
                b = c2, c2 = c1, f2 = f1;
                c1 = b - gr * (b - a), f1 = pr2(c1);
            }
        }
        r_peak = 0.5 * (a + b);
        f_peak = std::max(f_peak, pr2(r_peak));
    }

    const double p2_scale = 2.0 * m * (std::fabs(E) + 1.0);
    if (f_peak < -1e-9 * p2_scale)
        throw SolverError("classical_reference: no classical orbit at this energy");

    rep.circular = f_peak < 1e-9 * p2_scale;
    if (rep.circular) {
        // refine the effective-potential minimum: dV/dr - l^2/(m r^3) = 0
        const auto g = [&](double r) { return potential.slope(r) - l * l / (m * r * r * r); };
        double a = r_at(std::max(0, i_peak - 1)), b = r_at(std::min(n_scan - 1, i_peak + 1));
        if (g(a) < 0.0 && g(b) > 0.0) {
            for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
                const double mid = 0.5 * (a + b);
                (g(mid) < 0.0 ? a : b) = mid;
            }
            r_peak = 0.5 * (a + b);
        }
        rep.r_min = rep.r_max = r_peak;
    } else {
        const auto bisect = [&](double neg, double pos) {
            // pr2(neg) < 0 <= pr2(pos); returns the crossing
            for (int it = 0; it < 200 && std::fabs(pos - neg) > 1e-15 * std::fabs(pos);
                 ++it) {
                const double mid = 0.5 * (neg + pos);
                (pr2(mid) < 0.0 ? neg : pos) = mid;
            }
            return 0.5 * (neg + pos);
        };
        if (pr2(cfg.r_window_hi) >= 0.0)
            throw SolverError("classical_reference: orbit not bound inside the search window");
        rep.r_max = bisect(cfg.r_window_hi, r_peak);
        // no inner turning point above the window floor means the orbit runs
        // through the center (the l = 0 radial case)
        rep.r_min = pr2(cfg.r_window_lo) < 0.0 ? bisect(cfg.r_window_lo, r_peak) : 0.0;
    }

    // launch at a radial turning point in the equatorial plane: the inner one
    // when the centrifugal barrier provides it (the steep part of the orbit
    // is covered first), else the outer one
    const double r0 = rep.circular ? r_peak : (rep.r_min > 0.0 ? rep.r_min : rep.r_max);
    const double p_theta0 = std::sqrt(std::max(0.0, l * l - rep.alpha_phi * rep.alpha_phi));
    const PhasePointCentral start{
        r0, 0.5 * std::numbers::pi, 0.0, 0.0, p_theta0, rep.alpha_phi, 0.0};

    const ForceModelCentral force(potential, units);
    rep.trajectory = integrate_canonical(force, start, cfg.dt, cfg.n_steps);

    const double r_first = rep.trajectory.points.front().r;
    for (const auto& pt : rep.trajectory.points) {
        if (!(pt.r > 0.0)) continue; // a center crossing landed on r = 0
        const double s = std::sin(pt.theta);
        rep.p_phi_residual = std::max(rep.p_phi_residual, std::fabs(pt.p_phi - rep.alpha_phi));
        double ang = pt.p_theta * pt.p_theta - l * l;
        if (rep.alpha_phi != 0.0) ang += rep.alpha_phi * rep.alpha_phi / (s * s);
        rep.polar_residual = std::max(rep.polar_residual, std::fabs(ang));
        const double rad =
            pt.p_r * pt.p_r + l * l / (pt.r * pt.r) + 2.0 * m * (potential(pt.r) - E);
        rep.radial_residual = std::max(rep.radial_residual, std::fabs(rad));
        rep.r_variation = std::max(rep.r_variation, std::fabs(pt.r - r_first));
    }
    return rep;
}

} // namespace qnb
