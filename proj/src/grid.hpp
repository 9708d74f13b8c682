#pragma once

#include <numbers>
#include <stdexcept>

namespace qnb {

// Closed uniform grid on [x_min, x_max], endpoints included.
struct Grid1D {
    double x_min = 0.0;
    double x_max = 1.0;
    int n = 3;

    Grid1D() = default;
    Grid1D(double lo, double hi, int n_points) : x_min(lo), x_max(hi), n(n_points) {
        if (n < 3) throw std::invalid_argument("Grid1D: need at least 3 points");
        if (!(x_max > x_min)) throw std::invalid_argument("Grid1D: x_max must exceed x_min");
    }

    double spacing() const { return (x_max - x_min) / (n - 1); }
    double x(int i) const { return x_min + i * spacing(); }
};

// Uniform radial grid on (0, r_max]: r_i = (i+1)*h, open at the origin.
// The virtual point r = 0 (index -1) carries the u(0) = 0 boundary condition.
struct RadialGrid {
    double r_max = 1.0;
    int n = 3;

    RadialGrid() = default;
    RadialGrid(double rmax, int n_points) : r_max(rmax), n(n_points) {
        if (n < 3) throw std::invalid_argument("RadialGrid: need at least 3 points");
        if (!(r_max > 0.0)) throw std::invalid_argument("RadialGrid: r_max must be positive");
    }

    double spacing() const { return r_max / n; }
    double r(int i) const { return (i + 1) * spacing(); }
};

// Uniform polar grid on the open interval (0, pi): theta_i = (i+1)*h with
// h = pi/(n+1). Both poles are virtual points just off the grid.
struct PolarGrid {
    int n = 3;

    PolarGrid() = default;
    explicit PolarGrid(int n_points) : n(n_points) {
        if (n < 3) throw std::invalid_argument("PolarGrid: need at least 3 points");
    }

    double spacing() const { return std::numbers::pi / (n + 1); }
    double theta(int i) const { return (i + 1) * spacing(); }
};

// Periodic azimuthal loop: phi_j = j*h on [0, 2*pi), h = 2*pi/n.
struct PhiLoop {
    int n = 8;

    PhiLoop() = default;
    explicit PhiLoop(int n_points) : n(n_points) {
        if (n < 4) throw std::invalid_argument("PhiLoop: need at least 4 samples");
    }

    double spacing() const { return 2.0 * std::numbers::pi / n; }
    double phi(int j) const { return j * spacing(); }
};

} // namespace qnb
