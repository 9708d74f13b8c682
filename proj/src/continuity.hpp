#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "grid.hpp"
#include "state.hpp"
#include "units.hpp"

namespace qnb {

struct DiagnosticsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flux gradients dW/d(coordinate) per separated axis, sampled on the state's
// own grids. The declared mode pins them down: at rest all three vanish; a
// circulating state advances its phase in phi alone, so dW_phi/dphi is the
// constant alpha_phi. Callers may overwrite individual fields to inject
// synthetic violations before handing them to continuity_fields.
struct WGradients {
    std::vector<double> dWr_dr;    // on the radial grid
    std::vector<double> dWth_dth;  // on the polar grid
    std::vector<double> dWph_dph;  // on the phi loop
};

WGradients w_gradients(const SeparableCentralState& state, const PhiLoop& loop);

// The three separated continuity fields
//   f_r     = (1/R_r^2)            d/dr   (r^2 R_r^2 dW_r/dr)
//   f_theta = (1/(R_th^2 sin th))  d/dth  (sin th R_th^2 dW_th/dth)
//   f_phi   = (1/R_ph^2)           d/dphi (R_ph^2 dW_ph/dphi)
// computed by finite differences. A separable stationary flow satisfies
// f_r + f_theta + f_phi/sin^2(theta) = 0 at every point. Samples inside a
// node-exclusion window (the 1/R^2 is indeterminate there) are masked and
// stored as 0.
struct ContinuityFields {
    RadialGrid radial_grid;
    std::vector<double> f_r;
    std::vector<std::uint8_t> mask_r;
    PolarGrid polar_grid;
    std::vector<double> f_theta;
    std::vector<std::uint8_t> mask_theta;
    PhiLoop phi_loop;
    std::vector<double> f_phi;
    std::vector<std::uint8_t> mask_phi;
};

ContinuityFields continuity_fields(const SeparableCentralState& state, const WGradients& w,
                                   const PhiLoop& loop);

// max over the unmasked (r, theta, phi) tensor sample set of
// |f_r + f_theta + f_phi/sin^2(theta)|.
double continuity_residual(const ContinuityFields& fields);

// A sampled quantity counts as constant when its spread is small against its
// size OR small absolutely (the latter keeps zero-mean constants from failing
// a relative test): std_dev <= max(1e-9, 1e-6 |mean|).
bool constant_enough(double mean, double std_dev);

// The separation constants of the continuity decomposition:
//   f_phi = c_phi,   f_theta + c_phi/sin^2(theta) = c_theta,   f_r = -c_theta.
// c_theta is extracted through both routes (polar channel and radial channel)
// and the gap between them is reported.
struct SeparationConstants {
    double c_phi = 0.0;
    double c_phi_std = 0.0;
    double c_theta = 0.0;  // polar route: mean of f_theta + c_phi/sin^2
    double c_theta_std = 0.0;
    double c_theta_radial = 0.0;  // radial route: -mean(f_r)
    double c_theta_radial_std = 0.0;
    double route_gap = 0.0;  // |polar estimate - radial estimate|
    bool separable = true;   // every channel passed the constancy test
    std::string note;
};

SeparationConstants extract_separation_constants(const ContinuityFields& fields);

// Mean and spread of a flux that continuity forces to be constant:
// lambda_r = r^2 R_r^2 dW_r/dr, lambda_theta = sin(th) R_th^2 dW_th/dth,
// lambda_phi = R_ph^2 dW_ph/dphi. For bound rest states all three are zero.
struct FluxConstant {
    double mean = 0.0;
    double std_dev = 0.0;
};

struct ContinuityReport {
    ContinuityFields fields;
    double residual_norm = 0.0;
    SeparationConstants constants;
    FluxConstant lambda_r;
    FluxConstant lambda_theta;
    FluxConstant lambda_phi;
    bool bound = false;   // residual, constants and fluxes all consistent
    std::string verdict;  // human-readable classification
};

// Full battery for a solver-produced state (mode-derived W gradients), or for
// explicitly injected gradients. tolerance gates the residual norm and the
// extracted constants for the bound verdict.
ContinuityReport continuity_report(const SeparableCentralState& state, const PhiLoop& loop,
                                   double tolerance = 1e-10);
ContinuityReport continuity_report(const SeparableCentralState& state, const WGradients& w,
                                   const PhiLoop& loop, double tolerance = 1e-10);

// Integrating d/dr(r^2 R^2 dW_r/dr) = -c_theta R^2 between two radial turning
// points (dW_r/dr = 0 there) makes the left side vanish while the right side
// is -c_theta times a positive integral — so a bound flow forces c_theta = 0.
// boundary_term is the flux difference between the window ends, integral_term
// the right-hand side -c * integral(weight); a mismatch between them flags an
// inconsistent (non-solution) field. The windows are snapped to grid samples.
struct TurningPointCheck {
    bool applicable = false;      // false when the window ends are not turning points
    double boundary_term = 0.0;   // flux(hi) - flux(lo)
    double integral_term = 0.0;   // -c * integral of the weight over the window
    double mismatch = 0.0;        // |boundary_term - integral_term|
    bool consistent = false;
    std::string note;
};

// Radial version: flux r^2 R^2 g, weight R^2, constant c_theta.
TurningPointCheck verify_turning_point_radial(const RadialGrid& grid, std::span<const double> R,
                                              std::span<const double> dWr_dr, double r_lo,
                                              double r_hi, double c_theta);

// Polar analogue: flux sin(th) R^2 g, weight R^2/sin(th), constant c_phi
// (valid once c_theta = 0 is established).
TurningPointCheck verify_turning_point_polar(const PolarGrid& grid, std::span<const double> R,
                                             std::span<const double> dWth_dth, double th_lo,
                                             double th_hi, double c_phi);

// Loop integral of the phase gradient around a closed phi circuit, in units of
// 2*pi*hbar. Single-valuedness of the wave function demands an integer. The
// sample path must close: phi strictly increasing with phi.back() - phi.front()
// equal to 2*pi (an open path is an input error). Values at the two endpoints
// describe the same physical point.
double action_winding(std::span<const double> dS_dphi, std::span<const double> phi,
                      const Units& units);

// Winding of a solved azimuthal factor sampled on a loop: the gradient is
// alpha_phi for a circulating state and 0 at rest.
double action_winding(const AzimuthalSolution& azimuthal, const PhiLoop& loop,
                      const Units& units);

} // namespace qnb
