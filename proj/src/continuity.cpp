#include "continuity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "field.hpp"
#include "quantum_potential.hpp"

namespace qnb {

namespace {

std::vector<std::uint8_t> node_mask(std::span<const double> R, double eps) {
    double peak = 0.0;
    for (double v : R) peak = std::max(peak, std::fabs(v));
    std::vector<std::uint8_t> mask(R.size(), 0);
    for (std::size_t i = 0; i < R.size(); ++i)
        mask[i] = (peak == 0.0 || std::fabs(R[i]) <= eps * peak) ? 1 : 0;
    return mask;
}

// Central difference around the periodic loop — no endpoint formulas needed.
std::vector<double> loop_derivative(const std::vector<double>& f, double h) {
    const int n = static_cast<int>(f.size());
    std::vector<double> d(f.size());
    for (int k = 0; k < n; ++k)
        d[k] = (f[(k + 1) % n] - f[(k + n - 1) % n]) / (2.0 * h);
    return d;
}

struct MeanStd {
    double mean = 0.0;
    double std_dev = 0.0;
    std::size_t count = 0;
};

MeanStd masked_stats(std::span<const double> vals, std::span<const std::uint8_t> mask) {
    MeanStd out;
    double sum = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (!mask.empty() && mask[i]) continue;
        sum += vals[i];
        ++out.count;
    }
    if (out.count == 0) return out;
    out.mean = sum / static_cast<double>(out.count);
    double ss = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (!mask.empty() && mask[i]) continue;
        const double d = vals[i] - out.mean;
        ss += d * d;
    }
    out.std_dev = std::sqrt(ss / static_cast<double>(out.count));
    return out;
}

} // namespace

WGradients w_gradients(const SeparableCentralState& state, const PhiLoop& loop) {
    WGradients w;
    w.dWr_dr.assign(state.radial.R.size(), 0.0);
    w.dWth_dth.assign(state.polar.R.size(), 0.0);
    switch (state.mode()) {
        case AzimuthalMode::rest:
            w.dWph_dph.assign(static_cast<std::size_t>(loop.n), 0.0);
            break;
        case AzimuthalMode::circulating:
            w.dWph_dph.assign(static_cast<std::size_t>(loop.n), state.alpha_phi());
            break;
        default:
            throw std::invalid_argument("w_gradients: state carries no mode declaration");
    }
    return w;
}

ContinuityFields continuity_fields(const SeparableCentralState& state, const WGradients& w,
                                   const PhiLoop& loop) {
    const auto& rg = state.radial.grid;
    const auto& pg = state.polar.grid;
    if (w.dWr_dr.size() != state.radial.R.size())
        throw std::invalid_argument("continuity_fields: dW_r/dr not on the radial grid");
    if (w.dWth_dth.size() != state.polar.R.size())
        throw std::invalid_argument("continuity_fields: dW_theta/dtheta not on the polar grid");
    if (w.dWph_dph.size() != static_cast<std::size_t>(loop.n))
        throw std::invalid_argument("continuity_fields: dW_phi/dphi not on the phi loop");

    ContinuityFields out;
    out.radial_grid = rg;
    out.polar_grid = pg;
    out.phi_loop = loop;

    out.mask_r = node_mask(state.radial.R, default_node_epsilon);
    {
        std::vector<double> prod(state.radial.R.size());
        for (std::size_t i = 0; i < prod.size(); ++i) {
            const double r = rg.r(static_cast<int>(i)), R = state.radial.R[i];
            prod[i] = r * r * R * R * w.dWr_dr[i];
        }
        const auto d = derivative(prod, rg.spacing());
        out.f_r.assign(prod.size(), 0.0);
        for (std::size_t i = 0; i < prod.size(); ++i) {
            if (out.mask_r[i]) continue;
            const double R = state.radial.R[i];
            out.f_r[i] = d[i] / (R * R);
        }
    }

    out.mask_theta = node_mask(state.polar.R, default_node_epsilon);
    {
        std::vector<double> prod(state.polar.R.size());
        for (std::size_t j = 0; j < prod.size(); ++j) {
            const double s = std::sin(pg.theta(static_cast<int>(j))), R = state.polar.R[j];
            prod[j] = s * R * R * w.dWth_dth[j];
        }
        const auto d = derivative(prod, pg.spacing());
        out.f_theta.assign(prod.size(), 0.0);
        for (std::size_t j = 0; j < prod.size(); ++j) {
            if (out.mask_theta[j]) continue;
            const double s = std::sin(pg.theta(static_cast<int>(j))), R = state.polar.R[j];
            out.f_theta[j] = d[j] / (R * R * s);
        }
    }

    {
        std::vector<double> Rph(static_cast<std::size_t>(loop.n));
        for (int k = 0; k < loop.n; ++k) Rph[k] = state.azimuthal.R(loop.phi(k));
        out.mask_phi = node_mask(Rph, default_node_epsilon);
        std::vector<double> prod(Rph.size());
        for (std::size_t k = 0; k < prod.size(); ++k)
            prod[k] = Rph[k] * Rph[k] * w.dWph_dph[k];
        const auto d = loop_derivative(prod, loop.spacing());
        out.f_phi.assign(prod.size(), 0.0);
        for (std::size_t k = 0; k < prod.size(); ++k) {
            if (out.mask_phi[k]) continue;
            out.f_phi[k] = d[k] / (Rph[k] * Rph[k]);
        }
    }
    return out;
}

double continuity_residual(const ContinuityFields& fields) {
    // The sum is separable, so the max over the tensor set only needs the
    // extremes of f_r: for fixed (theta, phi) the largest |f_r + c| sits at
    // one of them.
    double fr_lo = 0.0, fr_hi = 0.0;
    bool have_r = false;
    for (std::size_t i = 0; i < fields.f_r.size(); ++i) {
        if (fields.mask_r[i]) continue;
        const double v = fields.f_r[i];
        if (!have_r) {
            fr_lo = fr_hi = v;
            have_r = true;
        }
        fr_lo = std::min(fr_lo, v);
        fr_hi = std::max(fr_hi, v);
    }
    if (!have_r)
        throw DiagnosticsError("continuity_residual: every radial sample is node-masked");

    double worst = 0.0;
    bool have_pair = false;
    for (std::size_t j = 0; j < fields.f_theta.size(); ++j) {
        if (fields.mask_theta[j]) continue;
        const double s = std::sin(fields.polar_grid.theta(static_cast<int>(j)));
        for (std::size_t k = 0; k < fields.f_phi.size(); ++k) {
            if (fields.mask_phi[k]) continue;
            const double c = fields.f_theta[j] + fields.f_phi[k] / (s * s);
            worst = std::max({worst, std::fabs(fr_lo + c), std::fabs(fr_hi + c)});
            have_pair = true;
        }
    }
    if (!have_pair)
        throw DiagnosticsError("continuity_residual: every angular sample is node-masked");
    return worst;
}

bool constant_enough(double mean, double std_dev) {
    return std_dev <= std::max(1e-9, 1e-6 * std::fabs(mean));
}

SeparationConstants extract_separation_constants(const ContinuityFields& fields) {
    SeparationConstants out;

    const auto phi = masked_stats(fields.f_phi, fields.mask_phi);
    if (phi.count == 0)
        throw DiagnosticsError("extract_separation_constants: phi channel fully masked");
    out.c_phi = phi.mean;
    out.c_phi_std = phi.std_dev;

    // Polar route: f_theta + c_phi/sin^2 should flatten to c_theta.
    std::vector<double> polar_vals(fields.f_theta.size(), 0.0);
    for (std::size_t j = 0; j < fields.f_theta.size(); ++j) {
        if (fields.mask_theta[j]) continue;
        const double s = std::sin(fields.polar_grid.theta(static_cast<int>(j)));
        polar_vals[j] = fields.f_theta[j] + out.c_phi / (s * s);
    }
    const auto th = masked_stats(polar_vals, fields.mask_theta);
    if (th.count == 0)
        throw DiagnosticsError("extract_separation_constants: polar channel fully masked");
    out.c_theta = th.mean;
    out.c_theta_std = th.std_dev;

    // Radial route: f_r should flatten to -c_theta.
    const auto rr = masked_stats(fields.f_r, fields.mask_r);
    if (rr.count == 0)
        throw DiagnosticsError("extract_separation_constants: radial channel fully masked");
    out.c_theta_radial = -rr.mean;
    out.c_theta_radial_std = rr.std_dev;

    out.route_gap = std::fabs(out.c_theta - out.c_theta_radial);
    out.separable = constant_enough(out.c_phi, out.c_phi_std) &&
                    constant_enough(out.c_theta, out.c_theta_std) &&
                    constant_enough(out.c_theta_radial, out.c_theta_radial_std);
    if (!out.separable) out.note = "not separable-stationary: a channel is not constant";
    return out;
}

ContinuityReport continuity_report(const SeparableCentralState& state, const PhiLoop& loop,
                                   double tolerance) {
    return continuity_report(state, w_gradients(state, loop), loop, tolerance);
}

ContinuityReport continuity_report(const SeparableCentralState& state, const WGradients& w,
                                   const PhiLoop& loop, double tolerance) {
    ContinuityReport rep;
    rep.fields = continuity_fields(state, w, loop);
    rep.residual_norm = continuity_residual(rep.fields);
    rep.constants = extract_separation_constants(rep.fields);

    const auto& rg = state.radial.grid;
    const auto& pg = state.polar.grid;
    std::vector<double> flux(state.radial.R.size());
    for (std::size_t i = 0; i < flux.size(); ++i) {
        const double r = rg.r(static_cast<int>(i)), R = state.radial.R[i];
        flux[i] = r * r * R * R * w.dWr_dr[i];
    }
    auto st = masked_stats(flux, {});
    rep.lambda_r = {st.mean, st.std_dev};

    flux.assign(state.polar.R.size(), 0.0);
    for (std::size_t j = 0; j < flux.size(); ++j) {
        const double s = std::sin(pg.theta(static_cast<int>(j))), R = state.polar.R[j];
        flux[j] = s * R * R * w.dWth_dth[j];
    }
    st = masked_stats(flux, {});
    rep.lambda_theta = {st.mean, st.std_dev};

    flux.assign(static_cast<std::size_t>(loop.n), 0.0);
    for (int k = 0; k < loop.n; ++k) {
        const double R = state.azimuthal.R(loop.phi(k));
        flux[k] = R * R * w.dWph_dph[k];
    }
    st = masked_stats(flux, {});
    rep.lambda_phi = {st.mean, st.std_dev};

    std::string why;
    auto flag = [&why](const std::string& reason) {
        if (!why.empty()) why += "; ";
        why += reason;
    };
    if (rep.residual_norm > tolerance) flag("continuity residual above tolerance");
    if (!rep.constants.separable) flag("separation channels not constant");
    if (std::fabs(rep.constants.c_phi) > tolerance ||
        std::fabs(rep.constants.c_theta) > tolerance ||
        std::fabs(rep.constants.c_theta_radial) > tolerance)
        flag("nonzero separation constants");
    if (!constant_enough(rep.lambda_r.mean, rep.lambda_r.std_dev) ||
        !constant_enough(rep.lambda_theta.mean, rep.lambda_theta.std_dev) ||
        !constant_enough(rep.lambda_phi.mean, rep.lambda_phi.std_dev))
        flag("flux not constant");
    if (state.mode() == AzimuthalMode::rest &&
        (std::fabs(rep.lambda_r.mean) > tolerance ||
         std::fabs(rep.lambda_theta.mean) > tolerance ||
         std::fabs(rep.lambda_phi.mean) > tolerance))
        flag("nonzero flux in a rest state");

    rep.bound = why.empty();
    rep.verdict = rep.bound ? "bound: separable stationary flow" : "violated: " + why;
    return rep;
}

namespace {

TurningPointCheck turning_point_check(std::span<const double> flux,
                                      std::span<const double> weight,
                                      std::span<const double> g, double h, int i_lo, int i_hi,
                                      double c) {
    TurningPointCheck out;
    if (i_lo < 0 || i_hi >= static_cast<int>(flux.size()) || i_hi - i_lo < 2) {
        out.note = "window too narrow on this grid";
        return out;
    }
    double gscale = 0.0;
    for (int i = i_lo; i <= i_hi; ++i) gscale = std::max(gscale, std::fabs(g[i]));
    if (gscale > 0.0 &&
        (std::fabs(g[i_lo]) > 1e-6 * gscale || std::fabs(g[i_hi]) > 1e-6 * gscale)) {
        out.note = "window endpoints are not turning points (dW/dcoord nonzero there)";
        return out;
    }
    out.applicable = true;
    out.boundary_term = flux[i_hi] - flux[i_lo];
    out.integral_term =
        -c * trapezoid(weight.subspan(i_lo, static_cast<std::size_t>(i_hi - i_lo + 1)), h);
    out.mismatch = std::fabs(out.boundary_term - out.integral_term);
    out.consistent =
        out.mismatch <=
        std::max(1e-10, 1e-9 * std::max(std::fabs(out.boundary_term),
                                        std::fabs(out.integral_term)));
    if (!out.consistent)
        out.note = "boundary term disagrees with -c * integral: not a separable solution";
    return out;
}

} // namespace

TurningPointCheck verify_turning_point_radial(const RadialGrid& grid, std::span<const double> R,
                                              std::span<const double> dWr_dr, double r_lo,
                                              double r_hi, double c_theta) {
    if (R.size() != dWr_dr.size() || R.size() != static_cast<std::size_t>(grid.n))
        throw std::invalid_argument("verify_turning_point_radial: samples not on the grid");
    const double h = grid.spacing();
    const int i_lo = static_cast<int>(std::ceil(r_lo / h - 1.0 - 1e-9));
    const int i_hi = static_cast<int>(std::floor(r_hi / h - 1.0 + 1e-9));
    std::vector<double> flux(R.size()), weight(R.size());
    for (std::size_t i = 0; i < R.size(); ++i) {
        const double r = grid.r(static_cast<int>(i));
        weight[i] = R[i] * R[i];
        flux[i] = r * r * weight[i] * dWr_dr[i];
    }
    return turning_point_check(flux, weight, dWr_dr, h, std::max(i_lo, 0),
                               std::min(i_hi, grid.n - 1), c_theta);
}

TurningPointCheck verify_turning_point_polar(const PolarGrid& grid, std::span<const double> R,
                                             std::span<const double> dWth_dth, double th_lo,
                                             double th_hi, double c_phi) {
    if (R.size() != dWth_dth.size() || R.size() != static_cast<std::size_t>(grid.n))
        throw std::invalid_argument("verify_turning_point_polar: samples not on the grid");
    const double h = grid.spacing();
    const int i_lo = static_cast<int>(std::ceil(th_lo / h - 1.0 - 1e-9));
    const int i_hi = static_cast<int>(std::floor(th_hi / h - 1.0 + 1e-9));
    std::vector<double> flux(R.size()), weight(R.size());
    for (std::size_t j = 0; j < R.size(); ++j) {
        const double s = std::sin(grid.theta(static_cast<int>(j)));
        flux[j] = s * R[j] * R[j] * dWth_dth[j];
        weight[j] = R[j] * R[j] / s;
    }
    return turning_point_check(flux, weight, dWth_dth, h, std::max(i_lo, 0),
                               std::min(i_hi, grid.n - 1), c_phi);
}

double action_winding(std::span<const double> dS_dphi, std::span<const double> phi,
                      const Units& units) {
    units.validate();
    if (dS_dphi.size() != phi.size())
        throw std::invalid_argument("action_winding: gradient and path sizes differ");
    if (phi.size() < 2) throw std::invalid_argument("action_winding: path needs two samples");
    for (std::size_t k = 1; k < phi.size(); ++k)
        if (!(phi[k] > phi[k - 1]))
            throw std::invalid_argument("action_winding: phi must strictly increase");
    const double span = phi.back() - phi.front();
    if (std::fabs(span - 2.0 * std::numbers::pi) > 1e-9)
        throw std::invalid_argument(
            "action_winding: open path (the loop must close after exactly 2*pi)");
    double loop_integral = 0.0;
    for (std::size_t k = 1; k < phi.size(); ++k)
        loop_integral += 0.5 * (dS_dphi[k] + dS_dphi[k - 1]) * (phi[k] - phi[k - 1]);
    return loop_integral / (2.0 * std::numbers::pi * units.hbar);
}

double action_winding(const AzimuthalSolution& azimuthal, const PhiLoop& loop,
                      const Units& units) {
    const double g =
        azimuthal.mode == AzimuthalMode::circulating ? azimuthal.alpha_phi : 0.0;
    std::vector<double> phi(static_cast<std::size_t>(loop.n) + 1);
    for (int k = 0; k < loop.n; ++k) phi[k] = loop.phi(k);
    phi.back() = 2.0 * std::numbers::pi;
    const std::vector<double> grad(phi.size(), g);
    return action_winding(grad, phi, units);
}

} // namespace qnb
