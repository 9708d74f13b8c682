#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"
#include "potential.hpp"
#include "quantum_potential.hpp"
#include "state.hpp"
#include "units.hpp"

namespace qnb {

struct DynamicsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// How the quantum term enters the effective potential V + Q:
//   off      — classical control, Q = 0.
//   identity — the separated equations of an eigenstate give V + Q in closed
//              form (E, minus the circulation term for circulating states),
//              so rest configurations are exact fixed points.
//   sampled  — local cubic interpolation of the finite-difference Q samples,
//              node windows filled by the eigenstate continuation; carries
//              the O(h^2) discretization error of the samples.
enum class QSource { off, identity, sampled };

struct PhasePoint1D {
    double x = 0.0;
    double p = 0.0;
    double t = 0.0;
};

// Spherical canonical variables: p_r = m dr/dt, p_theta = m r^2 dtheta/dt,
// p_phi = m r^2 sin^2(theta) dphi/dt.
struct PhasePointCentral {
    double r = 0.0, theta = 0.0, phi = 0.0;
    double p_r = 0.0, p_theta = 0.0, p_phi = 0.0;
    double t = 0.0;
};

// Cartesian image of a central phase point; the integrator advances these
// (the kinetic term is momentum-only there, so the explicit Stormer-Verlet
// split applies) and reports the spherical variables.
struct CartesianPoint {
    std::array<double, 3> x{};
    std::array<double, 3> p{};
};

CartesianPoint to_cartesian(const PhasePointCentral& pt, const Units& units);
PhasePointCentral to_spherical(const CartesianPoint& c, double t, const Units& units);

// Effective 1D force -d(V + Q)/dx with the route selected at construction.
class ForceModel1D {
  public:
    // Classical control: V alone (QSource::off).
    ForceModel1D(const Potential1D& potential, const Units& units);
    // Eigenstate-backed quantum force, identity or sampled route.
    ForceModel1D(const StationaryState1D& state, const Potential1D& potential, QSource source);
    // Arbitrary sampled amplitude: no eigenvalue to continue with, so a
    // force query whose stencil touches a node window throws DynamicsError.
    ForceModel1D(const Potential1D& potential, const QField1D& q, const Units& units);

    double force(double x) const;               // -d(V+Q)/dx
    double effective_potential(double x) const; // V + Q
    double hamiltonian(const PhasePoint1D& pt) const;
    bool inside(double x) const;
    // Nearest grid sample sits in a node-exclusion window (always false for
    // the classical route).
    bool node_masked(double x) const;
    QSource source() const { return source_; }
    const Units& units() const { return units_; }
    std::string describe() const;

  private:
    Units units_;
    QSource source_ = QSource::off;
    Potential1D potential_;
    double lo_ = 0.0, hi_ = 0.0;
    double E_ = 0.0;                  // identity / sampled continuation level
    CubicInterpolant q_;              // sampled route
    std::vector<std::uint8_t> mask_;  // node windows on the state grid
    double grid_x0_ = 0.0, grid_h_ = 1.0;
    bool arbitrary_amplitude_ = false; // no continuation available
};

// Effective central force for the Hamiltonian
//   H = p_r^2/2m + p_theta^2/(2m r^2) + p_phi^2/(2m r^2 sin^2 theta) + V + Q.
class ForceModelCentral {
  public:
    // Classical control: V(r) alone on r > 0.
    ForceModelCentral(const CentralPotential& potential, const Units& units);
    // Eigenstate-backed quantum force, identity or sampled route; the domain
    // is the state's (r, theta) grid box.
    ForceModelCentral(const SeparableCentralState& state, const CentralPotential& potential,
                      QSource source);

    // dp/dt = -dH/d(r, theta, phi): centrifugal terms plus the potential
    // gradient. The phi component is identically zero (axisymmetric V + Q).
    std::array<double, 3> generalized_force(const PhasePointCentral& pt) const;
    double effective_potential(double r, double theta) const; // V + Q
    double hamiltonian(const PhasePointCentral& pt) const;
    // Cartesian components of -grad(V+Q), consumed by the integrator.
    std::array<double, 3> force_cartesian(const std::array<double, 3>& pos) const;
    double potential_at(const std::array<double, 3>& pos) const;
    bool inside(double r, double theta) const;
    bool node_masked(double r, double theta) const;
    QSource source() const { return source_; }
    const Units& units() const { return units_; }
    std::string describe() const;

  private:
    double dU_dr(double r, double theta) const;
    double dU_dtheta(double r, double theta) const;

    Units units_;
    QSource source_ = QSource::off;
    CentralPotential potential_;
    bool grid_bounded_ = false; // state-backed models live on the grid box
    double r_lo_ = 0.0, r_hi_ = 0.0, th_lo_ = 0.0, th_hi_ = 0.0;
    double E_ = 0.0;
    double kappa_ = 0.0; // circulation term alpha_phi^2/2m (identity route)
    CubicInterpolant q_r_, q_theta_; // sampled route
    double q_phi_ = 0.0;
    std::vector<std::uint8_t> mask_r_, mask_theta_;
    double r0_ = 0.0, rh_ = 1.0, th0_ = 0.0, thh_ = 1.0;
};

struct Trajectory1D {
    std::vector<PhasePoint1D> points; // initial point first, one per step after
    std::vector<double> H;            // Hamiltonian at each recorded point
    bool exited = false;              // halted at the domain boundary
    double dt = 0.0;
    int steps_requested = 0;
    QSource source = QSource::off;
    std::string model;
};

struct TrajectoryCentral {
    std::vector<PhasePointCentral> points;
    std::vector<double> H;
    bool exited = false;
    double dt = 0.0;
    int steps_requested = 0;
    QSource source = QSource::off;
    std::string model;
};

// Stormer-Verlet (kick-drift-kick) integration of the canonical equations;
// symplectic and time-reversible. Throws std::invalid_argument for dt <= 0,
// n_steps < 1, or an initial point outside the domain; halts early with the
// exited flag when a step would leave it.
Trajectory1D integrate_canonical(const ForceModel1D& force, const PhasePoint1D& initial,
                                 double dt, int n_steps);
TrajectoryCentral integrate_canonical(const ForceModelCentral& force,
                                      const PhasePointCentral& initial, double dt, int n_steps);

struct EnergyDrift {
    double max_abs = 0.0;       // max |H_k - H_0|
    std::vector<double> dH_dt;  // finite-difference slope of the H series
};

EnergyDrift energy_drift(std::span<const double> H, double dt);
inline EnergyDrift energy_drift(const Trajectory1D& t) { return energy_drift(t.H, t.dt); }
inline EnergyDrift energy_drift(const TrajectoryCentral& t) { return energy_drift(t.H, t.dt); }

inline constexpr double default_rest_tolerance = 1e-9;

struct RestPointResult {
    double displacement = 0.0; // max Euclidean distance from the start
    bool pass = false;
    bool skipped = false; // start fell in a node-exclusion window
    bool exited = false;  // left the domain (counted as motion, never a pass)
    std::string note;
};

struct RestCheckReport {
    std::vector<RestPointResult> points;
    int passed = 0;
    int skipped = 0;
    bool all_pass = false; // every non-skipped point passed, at least one ran
    double tolerance = default_rest_tolerance;
    double dt = 0.0;
    int n_steps = 0;
};

// Launches each sample point at rest (p = 0) and verdicts on the maximum
// displacement; points in node-exclusion windows are skipped with a note.
RestCheckReport rest_check(const ForceModel1D& force, std::span<const double> xs, double dt,
                           int n_steps, double tolerance = default_rest_tolerance);
// Central sample points are (r, theta, phi) triples.
RestCheckReport rest_check(const ForceModelCentral& force,
                           std::span<const std::array<double, 3>> points, double dt, int n_steps,
                           double tolerance = default_rest_tolerance);

} // namespace qnb
