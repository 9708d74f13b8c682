#pragma once

#include <string>
#include <vector>

#include "grid.hpp"
#include "units.hpp"

namespace qnb {

// Confining 1D potentials. The box is a hard-wall well: V = 0 on (0, a) and the
// walls enter as Dirichlet boundary conditions, not as finite samples.
class Potential1D {
  public:
    enum class Kind { box, harmonic, finite_well, tabulated };

    static Potential1D box(double a);
    static Potential1D harmonic(double omega, const Units& units);
    // Well of depth v0: V = 0 for |x| <= a/2, V = v0 outside.
    static Potential1D finite_well(double v0, double a);
    static Potential1D tabulated(std::vector<double> x, std::vector<double> v);

    double operator()(double x) const;
    // dV/dx: analytic for the closed forms, the segment slope for tabulated
    // data. The finite well's steps and the box walls carry zero slope (the
    // walls act through the domain boundary, not through a force).
    double slope(double x) const;
    std::vector<double> evaluate(const Grid1D& grid) const;

    Kind kind() const { return kind_; }
    bool hard_walls() const { return kind_ == Kind::box; }
    double width() const { return a_; }
    double omega() const { return omega_; }
    double depth() const { return v0_; }
    const std::vector<double>& table_x() const { return tab_x_; }
    const std::vector<double>& table_v() const { return tab_v_; }

    // Domain the potential is defined on (box/tabulated are restricted).
    double domain_min() const;
    double domain_max() const;

    std::string describe() const;

  private:
    Potential1D() = default;
    Kind kind_ = Kind::box;
    double a_ = 0.0;
    double omega_ = 0.0;
    double v0_ = 0.0;
    double c_harm_ = 0.0; // 0.5 * m * omega^2
    std::vector<double> tab_x_, tab_v_;
};

// Central potentials V(r) on r > 0.
class CentralPotential {
  public:
    enum class Kind { coulomb, harmonic3d, tabulated };

    static CentralPotential coulomb(double z);
    static CentralPotential harmonic3d(double omega, const Units& units);
    static CentralPotential tabulated(std::vector<double> r, std::vector<double> v);

    double operator()(double r) const;
    // dV/dr: analytic for the closed forms, the segment slope for tabulated
    // data.
    double slope(double r) const;
    std::vector<double> evaluate(const RadialGrid& grid) const;

    Kind kind() const { return kind_; }
    double z() const { return z_; }
    double omega() const { return omega_; }
    const std::vector<double>& table_r() const { return tab_r_; }
    const std::vector<double>& table_v() const { return tab_v_; }
    // Coefficient of the -1/r term at the origin (z for coulomb, else 0);
    // feeds the origin series of the radial solver.
    double coulomb_strength() const { return kind_ == Kind::coulomb ? z_ : 0.0; }

    std::string describe() const;

  private:
    CentralPotential() = default;
    Kind kind_ = Kind::coulomb;
    double z_ = 1.0;
    double omega_ = 0.0;
    double c_harm_ = 0.0;
    std::vector<double> tab_r_, tab_v_;
};

// Linear interpolation shared by the tabulated kinds, and the matching
// piecewise-constant segment slope.
double interp_linear(const std::vector<double>& xs, const std::vector<double>& vs, double x);
double interp_slope(const std::vector<double>& xs, const std::vector<double>& vs, double x);

} // namespace qnb
