#include "quantum_potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "field.hpp"

namespace qnb {

static std::vector<std::uint8_t> node_mask(std::span<const double> R, double eps) {
    double m = 0.0;
    for (double x : R) m = std::max(m, std::fabs(x));
    if (!(m > 0.0)) throw std::domain_error("quantum potential: amplitude identically zero");
    std::vector<std::uint8_t> mask(R.size(), 0);
    for (std::size_t i = 0; i < R.size(); ++i)
        if (std::fabs(R[i]) < eps * m) mask[i] = 1;
    return mask;
}

QField1D quantum_potential_1d(std::span<const double> R, const Grid1D& grid, const Units& units,
                              double node_epsilon) {
    units.validate();
    if (static_cast<int>(R.size()) != grid.n)
        throw std::invalid_argument("quantum_potential_1d: sample count != grid size");
    if (grid.n < 4)
        throw std::invalid_argument("quantum_potential_1d: need at least 4 samples");

    QField1D out;
    out.grid = grid;
    out.node_epsilon = node_epsilon;
    out.mask = node_mask(R, node_epsilon);
    out.Q.assign(R.size(), 0.0);

    const double c = -0.5 * units.hbar * units.hbar / units.mass;
    const auto d2 = second_derivative(R, grid.spacing());
    for (std::size_t i = 0; i < R.size(); ++i)
        if (!out.mask[i]) out.Q[i] = c * d2[i] / R[i];
    return out;
}

std::vector<double> q_with_continuation(const QField1D& q, std::span<const double> V, double E) {
    if (V.size() != q.Q.size())
        throw std::invalid_argument("q_with_continuation: size mismatch");
    std::vector<double> out(q.Q);
    for (std::size_t i = 0; i < out.size(); ++i)
        if (q.mask[i]) out[i] = E - V[i];
    return out;
}

QFieldSpherical quantum_potential_spherical(const SeparableCentralState& state,
                                            double node_epsilon) {
    const Units& units = state.units;
    units.validate();
    const auto& rad = state.radial;
    const auto& pol = state.polar;
    if (static_cast<int>(rad.R.size()) != rad.grid.n || static_cast<int>(pol.R.size()) != pol.grid.n)
        throw std::invalid_argument("quantum_potential_spherical: sample count mismatch");

    QFieldSpherical out;
    out.radial_grid = rad.grid;
    out.polar_grid = pol.grid;
    out.node_epsilon = node_epsilon;
    const double c = -0.5 * units.hbar * units.hbar / units.mass;

    // radial part: -(hbar^2/2m) (1/R_r) (1/r^2) d/dr(r^2 dR_r/dr)
    //            = -(hbar^2/2m) (R_r'' + (2/r) R_r') / R_r
    out.mask_r = node_mask(rad.R, node_epsilon);
    out.Q_r.assign(rad.R.size(), 0.0);
    {
        const double h = rad.grid.spacing();
        const auto d1 = derivative(rad.R, h);
        const auto d2 = second_derivative(rad.R, h);
        for (int i = 0; i < rad.grid.n; ++i)
            if (!out.mask_r[i])
                out.Q_r[i] = c * (d2[i] + 2.0 / rad.grid.r(i) * d1[i]) / rad.R[i];
    }

    // polar part: -(hbar^2/2m) (1/R_t) (1/sin) d/dtheta(sin dR_t/dtheta)
    //           = -(hbar^2/2m) (R_t'' + cot(theta) R_t') / R_t
    out.mask_theta = node_mask(pol.R, node_epsilon);
    out.Q_theta.assign(pol.R.size(), 0.0);
    {
        const double h = pol.grid.spacing();
        const auto d1 = derivative(pol.R, h);
        const auto d2 = second_derivative(pol.R, h);
        for (int i = 0; i < pol.grid.n; ++i)
            if (!out.mask_theta[i])
                out.Q_theta[i] = c * (d2[i] + d1[i] / std::tan(pol.grid.theta(i))) / pol.R[i];
    }

    out.q_phi = state.azimuthal.q_phi;
    return out;
}

EnergyIdentityReport energy_identity_1d(const QField1D& q, std::span<const double> R,
                                        std::span<const double> V, double E, const Units& units) {
    const std::size_t n = R.size();
    if (q.Q.size() != n || V.size() != n)
        throw std::invalid_argument("energy_identity_1d: size mismatch");
    const double h = q.grid.spacing();
    const double h2 = h * h;
    const double c = 0.5 * units.hbar * units.hbar / units.mass;

    EnergyIdentityReport rep;
    rep.residual.assign(n, 0.0);
    rep.tolerance.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (q.mask[i]) continue;
        rep.residual[i] = std::fabs(q.Q[i] + V[i] - E);
        // 4th difference estimate of |R''''/R|; edge points reuse the nearest
        // interior stencil.
        const std::size_t j = std::clamp(i, std::size_t{2}, n - 3);
        const double d4 =
            (R[j - 2] - 4.0 * R[j - 1] + 6.0 * R[j] - 4.0 * R[j + 1] + R[j + 2]) / (h2 * h2);
        const double curv = c * std::fabs(d4 / R[i]);
        rep.tolerance[i] = 10.0 * h2 * std::max(std::fabs(E), curv);
        rep.max_rel = std::max(rep.max_rel, rep.residual[i] / std::fabs(E));
        if (rep.residual[i] > rep.tolerance[i]) rep.within_curvature_bound = false;
    }
    return rep;
}

} // namespace qnb
