#pragma once

#include <string>
#include <vector>

#include "eigensolver_1d.hpp"
#include "grid.hpp"
#include "potential.hpp"
#include "state.hpp"
#include "units.hpp"

namespace qnb {

// Rest-mode azimuthal factor cos(m phi) or sin(m phi): alpha_phi = m*hbar,
// Q_phi = (m*hbar)^2/(2*mass). m = 0 takes the cosine form (a constant).
AzimuthalSolution solve_azimuthal(int m, AzimuthalParity parity, const Units& units);

// Circulating branch: R_phi = const and the phase advances with alpha_phi,
// which stays a free real number here — whether it is an integer multiple of
// hbar is the winding diagnostic's question, not this constructor's.
AzimuthalSolution circulating_azimuthal(double alpha_phi, const Units& units);

// Polar separation constants and amplitudes for l = m..l_max, by Numerov
// shooting on the transformed amplitude P = R*sqrt(sin theta). Throws
// SolverError when a level fails to converge.
std::vector<PolarSolution> solve_polar(int m, int l_max, const PolarGrid& grid,
                                       const Units& units);

struct RadialSpectrumResult {
    std::vector<RadialSolution> states; // ordered by radial node count
    std::vector<StateConvergence> info;
    bool complete = true;
    std::vector<std::string> warnings;
};

// Bound radial levels at a fixed polar constant; u = r*R reduces the radial
// operator to the 1D engine. Rejection and warning semantics follow the 1D
// solver, with the decay check applied at r_max only (the origin side is a
// regularity condition, not a decay boundary).
RadialSpectrumResult solve_radial(const CentralPotential& potential, double alpha_theta_sq,
                                  const RadialGrid& grid, const Units& units,
                                  const ShootingConfig& config);

// Product state from compatible factors: l >= m, matching alpha_theta_sq
// (and, in the circulating case, polar m consistent with alpha_phi/hbar).
SeparableCentralState assemble_state(const RadialSolution& radial, const PolarSolution& polar,
                                     const AzimuthalSolution& azimuthal);

// One (n_r, l, m) rest state end to end.
SeparableCentralState solve_central_state(const CentralPotential& potential, int n_r, int l,
                                          int m, AzimuthalParity parity, const RadialGrid& rgrid,
                                          const PolarGrid& pgrid, const Units& units,
                                          ShootingConfig config = {});

// Radial window holding Coulomb levels up to principal number n_max with
// tails below the default decay threshold: 40 * n_max^2 natural lengths
// (hbar^2 / (mass * z)).
double coulomb_r_max(int n_max, double z, const Units& units);

} // namespace qnb
