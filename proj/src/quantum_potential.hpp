#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "grid.hpp"
#include "state.hpp"
#include "units.hpp"

namespace qnb {

inline constexpr double default_node_epsilon = 1e-6;

// Q sampled on a 1D grid. mask[i] != 0 marks a node-exclusion window
// (|R_i| < node_epsilon * max|R|) where the curvature ratio is indeterminate;
// Q is stored as 0 there and must not be consumed directly.
struct QField1D {
    Grid1D grid;
    std::vector<double> Q;
    std::vector<std::uint8_t> mask;
    double node_epsilon = default_node_epsilon;
};

// Q_i = -(hbar^2/2m) * R''_i / R_i, central differences inside and one-sided
// second-order stencils at the ends.
QField1D quantum_potential_1d(std::span<const double> R, const Grid1D& grid, const Units& units,
                              double node_epsilon = default_node_epsilon);

// Masked entries replaced with the eigenstate continuation Q = E - V.
std::vector<double> q_with_continuation(const QField1D& q, std::span<const double> V, double E);

// Separated spherical Q: total Q(r,theta,phi) = Q_r(r) + Q_theta(theta)/r^2
//   + q_phi/(r^2 sin^2 theta).
struct QFieldSpherical {
    RadialGrid radial_grid;
    std::vector<double> Q_r;
    std::vector<std::uint8_t> mask_r;
    PolarGrid polar_grid;
    std::vector<double> Q_theta;
    std::vector<std::uint8_t> mask_theta;
    double q_phi = 0.0; // closed form, constant in phi
    double node_epsilon = default_node_epsilon;
};

QFieldSpherical quantum_potential_spherical(const SeparableCentralState& state,
                                            double node_epsilon = default_node_epsilon);

// Pointwise check of Q + V = E with a curvature-scaled tolerance
// tol_i = 10*h^2 * max(|E|, (hbar^2/2m) |R''''/R|_i) (4th difference estimate).
struct EnergyIdentityReport {
    std::vector<double> residual;  // |Q_i + V_i - E| at unmasked points (0 when masked)
    std::vector<double> tolerance; // curvature-scaled bound per point
    double max_rel = 0.0;          // max residual / |E| over unmasked points
    bool within_curvature_bound = true;
};

EnergyIdentityReport energy_identity_1d(const QField1D& q, std::span<const double> R,
                                        std::span<const double> V, double E, const Units& units);

} // namespace qnb
