#pragma once

#include <cmath>
#include <vector>

#include "grid.hpp"
#include "units.hpp"

namespace qnb {

// Bound stationary state of a 1D potential: real amplitude R(x) with
// trapezoid-normalized R^2 and the first nonzero sample positive.
struct StationaryState1D {
    Grid1D grid;
    std::vector<double> R;
    double E = 0.0;
    int nodes = 0;
    Units units;
};

enum class AzimuthalParity { cosine, sine, constant };
// rest: p_phi = 0, the amplitude carries the azimuthal structure.
// circulating: R_phi = const and the phase advances, p_phi = alpha_phi.
enum class AzimuthalMode { rest, circulating };

// Closed-form azimuthal factor. For the trigonometric forms
// alpha_phi = m*hbar and Q_phi = (m*hbar)^2 / (2*mass); for the constant form
// Q_phi = 0 and alpha_phi is whatever the circulation carries.
struct AzimuthalSolution {
    int m = 0;
    double alpha_phi = 0.0;
    AzimuthalParity parity = AzimuthalParity::constant;
    AzimuthalMode mode = AzimuthalMode::rest;
    double q_phi = 0.0;
    Units units;

    double R(double phi) const {
        switch (parity) {
            case AzimuthalParity::cosine: return std::cos(m * phi);
            case AzimuthalParity::sine: return std::sin(m * phi);
            case AzimuthalParity::constant: return 1.0;
        }
        return 1.0;
    }
    double dR(double phi) const {
        switch (parity) {
            case AzimuthalParity::cosine: return -m * std::sin(m * phi);
            case AzimuthalParity::sine: return m * std::cos(m * phi);
            case AzimuthalParity::constant: return 0.0;
        }
        return 0.0;
    }
    double d2R(double phi) const {
        if (parity == AzimuthalParity::constant) return 0.0;
        return -double(m) * m * R(phi);
    }
};

// Polar factor R_theta on the open (0, pi) grid; alpha_theta_sq is the
// separation constant of the polar equation (l(l+1)*hbar^2 at quantization).
struct PolarSolution {
    int l = 0;
    int m = 0;
    double alpha_theta_sq = 0.0;
    PolarGrid grid;
    std::vector<double> R;
    Units units;
};

// Radial factor R_r = u/r with int u^2 dr = 1.
struct RadialSolution {
    RadialGrid grid;
    std::vector<double> R;
    double E = 0.0;
    double alpha_theta_sq = 0.0;
    int nodes = 0; // radial node count n_r
    Units units;
};

// Product state R = R_r(r) * R_theta(theta) * R_phi(phi) with phase
// S = alpha_phi*phi - E*t (alpha_phi = 0 in rest mode).
struct SeparableCentralState {
    RadialSolution radial;
    PolarSolution polar;
    AzimuthalSolution azimuthal;
    Units units;

    double E() const { return radial.E; }
    double alpha_theta_sq() const { return polar.alpha_theta_sq; }
    double alpha_phi() const { return azimuthal.alpha_phi; }
    int l() const { return polar.l; }
    int m() const { return polar.m; }
    // Coulomb-style principal label n = n_r + l + 1.
    int principal_n() const { return radial.nodes + polar.l + 1; }
    AzimuthalMode mode() const { return azimuthal.mode; }
};

} // namespace qnb
