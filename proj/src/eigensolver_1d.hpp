#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grid.hpp"
#include "numerov.hpp"
#include "potential.hpp"
#include "state.hpp"
#include "units.hpp"

namespace qnb {

struct ShootingConfig {
    // Energy search window; when absent it is derived from the potential
    // (min V up to the confinement rim, auto-extended for hard walls).
    std::optional<std::pair<double, double>> energy_bracket;
    int max_states = 1;
    double bisection_tol = 1e-10; // relative energy tolerance
    double match_point = 0.5;     // fraction of the domain
    double decay_threshold = 1e-8; // relative boundary amplitude bound
    double node_epsilon = 1e-6;
    double seed_scale = 1.0;
};

struct StateConvergence {
    int iterations = 0;
    double residual = 0.0; // max |R'' + k R| h^2 / max|R|
    bool converged = false;
    bool matched = false;
    double boundary_amplitude = 0.0; // worst soft-boundary |R|/max|R|
    bool decay_ok = true;
};

struct SpectrumResult1D {
    std::vector<StationaryState1D> states; // strictly increasing E, nodes = index
    std::vector<StateConvergence> info;
    bool complete = true; // false when the bracket held fewer states than asked
    std::vector<std::string> warnings;
};

struct ShotResult1D {
    std::vector<double> R;
    double log_derivative = 0.0;
    int nodes = 0;
};

// Single Numerov shot across the grid; match_index < 0 means the far boundary.
ShotResult1D shoot(const Potential1D& potential, double E, const Grid1D& grid,
                   const Units& units, ShootDirection direction, int match_index = -1);

SpectrumResult1D solve_bound_states_1d(const Potential1D& potential, const Grid1D& grid,
                                       const Units& units, const ShootingConfig& config);

struct RawSpectrum {
    std::vector<EigenResult> states;
    bool complete = true;
    std::vector<std::string> warnings;
};

// Node-target loop shared by the 1D and radial solvers. `extendable_hi`
// doubles the window upward when the confinement has no rim (hard walls).
// Decay/rejection policies are applied by the callers, whose boundary
// semantics differ.
RawSpectrum solve_spectrum_raw(const NumerovProblem& problem, const ShootingConfig& config,
                               double lo, double hi, bool extendable_hi);

} // namespace qnb
