#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "grid.hpp"
#include "potential.hpp"
#include "state.hpp"

namespace qnb {

// Statistics of a pointwise operator ratio (A psi)/psi over the tensor sample
// set RadialGrid x PolarGrid x PhiLoop, with psi = R_r R_th R_ph e^{iS/hbar}
// at t = 0. Mean, spread and the mean |imag| are |psi|^2-weighted (volume
// element r^2 sin(theta)); the max deviations are raw extremes over unmasked
// samples — near the coordinate axes the 1/r^2 and 1/(r sin theta)^2 factors
// magnify angular differencing error without bound, so the raw max is
// reported for honesty but the weighted numbers carry the verdict.
struct RatioStats {
    double predicted_real = 0.0;
    double predicted_imag = 0.0;
    double real_mean = 0.0;
    double real_std = 0.0;
    double real_max_dev = 0.0;   // max |Re(ratio) - real_mean|, raw
    double imag_mean_abs = 0.0;
    double imag_max = 0.0;       // max |Im(ratio)|, raw
    double spacing = 0.0;        // largest grid spacing the operator differences
    std::size_t samples = 0;     // unmasked tensor points
};

// Ratios of the three commuting operators against their separation constants:
//   (H psi)/psi     -> E            (imag -> 0)
//   (L^2 psi)/psi   -> alpha_theta^2 (imag -> -hbar c_theta)
//   (Lz^2 psi)/psi  -> alpha_phi^2   (imag -> -hbar c_phi)
// and the pointwise z angular-momentum ratio (Lz psi)/psi, which is reported
// as a field over the phi loop rather than averaged: at rest it is the
// varying -i hbar R'/R (the state is not an Lz eigenfunction), while a
// circulating state turns it into the constant alpha_phi.
struct OperatorRatioReport {
    RatioStats hamiltonian;
    RatioStats l_squared;
    RatioStats lz_squared;

    PhiLoop phi_loop;
    std::vector<std::complex<double>> lz_ratio; // 0 where masked
    std::vector<std::uint8_t> lz_mask;
    double lz_predicted = 0.0; // p_phi: alpha_phi when circulating, else 0
    bool lz_constant = false;  // the field passes the constancy test
};

struct OperatorRatioConfig {
    int n_phi = 8;
    double node_epsilon = 1e-6;
    // Separation constants from the continuity diagnostics feed the predicted
    // imaginary offsets (zero for any bound state).
    double c_theta = 0.0;
    double c_phi = 0.0;
};

// Second-order finite differences per axis; samples are masked at amplitude
// nodes and at the ends of the open grids (no central stencil there). Throws
// DiagnosticsError when an axis has no usable samples left.
OperatorRatioReport operator_ratios(const SeparableCentralState& state,
                                    const CentralPotential& potential,
                                    const OperatorRatioConfig& config = {});

} // namespace qnb
