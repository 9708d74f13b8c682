#pragma once

#include "dynamics.hpp"
#include "potential.hpp"
#include "units.hpp"

namespace qnb {

struct ClassicalOrbitConfig {
    // alpha_phi = fraction * l splits the angular momentum between the polar
    // and azimuthal channels (must stay within [0, 1]; irrelevant when l = 0).
    double alpha_phi_fraction = 0.6;
    double dt = 1e-4;
    int n_steps = 50000;
    // turning points are searched on [r_window_lo, r_window_hi]; keep the
    // window inside the table for tabulated potentials
    double r_window_lo = 1e-3;
    double r_window_hi = 1e3;
};

// Constancy report for the classical separation constants along a Q-off
// orbit: p_phi = alpha_phi, p_theta^2 + alpha_phi^2/sin^2(theta) =
// alpha_theta^2 = l^2, and p_r^2 + alpha_theta^2/r^2 + 2m(V - E) = 0.
// Any real l is admitted — with Q switched off nothing quantizes it.
struct ClassicalOrbitReport {
    double E = 0.0;
    double l = 0.0;
    double alpha_phi = 0.0;
    double alpha_theta_sq = 0.0;
    double r_min = 0.0, r_max = 0.0; // radial turning points (equal if circular)
    bool circular = false;
    double p_phi_residual = 0.0;    // max |p_phi - alpha_phi|
    double polar_residual = 0.0;    // max |p_theta^2 + alpha_phi^2/sin^2 - l^2|
    double radial_residual = 0.0;   // max |p_r^2 + l^2/r^2 + 2m(V - E)|
    double r_variation = 0.0;       // max |r - r(0)|, the circular diagnostic
    TrajectoryCentral trajectory;
};

// Integrates the classical orbit (the Q-off force model) launched from a
// radial turning point in the equatorial plane and reports how well the
// classical constants hold along it. Throws SolverError when the energy
// admits no orbit inside the search window.
ClassicalOrbitReport classical_reference(const CentralPotential& potential, double E, double l,
                                         const Units& units, ClassicalOrbitConfig config = {});

} // namespace qnb
