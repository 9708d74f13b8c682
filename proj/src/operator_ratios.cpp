#include "operator_ratios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "continuity.hpp"

namespace qnb {

namespace {

// Node windows plus the two end samples of an open grid (no central stencil
// there; the boundary neighbors live off the grid).
std::vector<std::uint8_t> stencil_mask(std::span<const double> amplitude, double eps) {
    double peak = 0.0;
    for (double v : amplitude) peak = std::max(peak, std::fabs(v));
    const std::size_t n = amplitude.size();
    std::vector<std::uint8_t> mask(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        mask[i] = (peak == 0.0 || std::fabs(amplitude[i]) <= eps * peak || i == 0 ||
                   i + 1 == n)
                      ? 1
                      : 0;
    return mask;
}

// Weighted accumulator for ratios of the separable form x = P + beta*f, where
// P and beta vary over the outer axes and f over the phi axis. The phi sums
// are centered on their weighted mean: P and beta*f largely cancel for an
// eigenstate, and combining their uncentered moments would shred the variance
// to rounding noise. The raw extremes come from the extremes of f (beta
// carries a sign, so both ends are candidates).
struct PhiSums {
    double W = 0.0;      // sum of |C|^2
    double center = 0.0; // weighted mean of Re f
    double S1 = 0.0;     // sum of |C|^2 * (Re f - center), ~0 by construction
    double S2 = 0.0;     // sum of |C|^2 * (Re f - center)^2
    double Sim = 0.0;    // sum of |C|^2 * |Im f|
    double re_lo = std::numeric_limits<double>::infinity(); // extremes of Re f - center
    double re_hi = -std::numeric_limits<double>::infinity();
    double im_max = 0.0;
    std::size_t count = 0;
};

struct RatioAccumulator {
    double W = 0.0, S1 = 0.0, S2 = 0.0, Sim = 0.0;
    double re_lo = std::numeric_limits<double>::infinity();
    double re_hi = -std::numeric_limits<double>::infinity();
    double im_max = 0.0;

    void add(double weight, double P, double beta, const PhiSums& f) {
        const double Pc = P + beta * f.center;
        W += weight * f.W;
        S1 += weight * (Pc * f.W + beta * f.S1);
        S2 += weight * (Pc * Pc * f.W + 2.0 * Pc * beta * f.S1 + beta * beta * f.S2);
        Sim += weight * std::fabs(beta) * f.Sim;
        const double a = Pc + beta * f.re_lo, b = Pc + beta * f.re_hi;
        re_lo = std::min({re_lo, a, b});
        re_hi = std::max({re_hi, a, b});
        im_max = std::max(im_max, std::fabs(beta) * f.im_max);
    }

    // Values are accumulated relative to the predicted constant, so the
    // second moment stays conditioned; shift back on the way out.
    RatioStats finalize(double predicted_real, double predicted_imag, double spacing,
                        std::size_t samples) const {
        RatioStats out;
        out.predicted_real = predicted_real;
        out.predicted_imag = predicted_imag;
        out.spacing = spacing;
        out.samples = samples;
        const double mean = S1 / W;
        out.real_mean = predicted_real + mean;
        out.real_std = std::sqrt(std::max(0.0, S2 / W - mean * mean));
        out.real_max_dev = std::max(re_hi - mean, mean - re_lo);
        out.imag_mean_abs = Sim / W;
        out.imag_max = im_max;
        return out;
    }
};

} // namespace

OperatorRatioReport operator_ratios(const SeparableCentralState& state,
                                    const CentralPotential& potential,
                                    const OperatorRatioConfig& config) {
    state.units.validate();
    if (config.n_phi < 4)
        throw std::invalid_argument("operator_ratios: phi loop needs at least 4 samples");
    const double hbar = state.units.hbar;
    const double kappa = hbar * hbar / (2.0 * state.units.mass);

    const auto& rg = state.radial.grid;
    const auto& A = state.radial.R;
    const double hr = rg.spacing();
    const auto mask_r = stencil_mask(A, config.node_epsilon);
    const auto V = potential.evaluate(rg);
    std::vector<double> ra(A.size(), 0.0), wr(A.size(), 0.0);
    std::size_t ur = 0;
    for (std::size_t i = 0; i < A.size(); ++i) {
        const double r = rg.r(static_cast<int>(i));
        wr[i] = r * r * A[i] * A[i];
        if (mask_r[i]) continue;
        const double d2 = (A[i + 1] - 2.0 * A[i] + A[i - 1]) / (hr * hr);
        const double d1 = (A[i + 1] - A[i - 1]) / (2.0 * hr);
        ra[i] = (d2 + 2.0 / r * d1) / A[i];
        ++ur;
    }

    const auto& pg = state.polar.grid;
    const auto& B = state.polar.R;
    const double ht = pg.spacing();
    const auto mask_t = stencil_mask(B, config.node_epsilon);
    std::vector<double> pb(B.size(), 0.0), wt(B.size(), 0.0), inv_s2(B.size(), 0.0);
    std::size_t ut = 0;
    for (std::size_t j = 0; j < B.size(); ++j) {
        const double th = pg.theta(static_cast<int>(j)), s = std::sin(th);
        wt[j] = s * B[j] * B[j];
        inv_s2[j] = 1.0 / (s * s);
        if (mask_t[j]) continue;
        const double d2 = (B[j + 1] - 2.0 * B[j] + B[j - 1]) / (ht * ht);
        const double d1 = (B[j + 1] - B[j - 1]) / (2.0 * ht);
        pb[j] = (d2 + std::cos(th) / s * d1) / B[j];
        ++ut;
    }

    const PhiLoop loop(config.n_phi);
    const double hp = loop.spacing();
    const bool circulating = state.mode() == AzimuthalMode::circulating;
    const int np = loop.n;
    std::vector<std::complex<double>> C(static_cast<std::size_t>(np));
    std::vector<double> amp(C.size());
    for (int k = 0; k < np; ++k) {
        const double ph = loop.phi(k);
        amp[k] = state.azimuthal.R(ph);
        C[k] = circulating ? amp[k] * std::exp(std::complex<double>(
                                          0.0, state.alpha_phi() / hbar * ph))
                           : std::complex<double>(amp[k], 0.0);
    }
    std::vector<std::uint8_t> mask_p(C.size(), 0);
    {
        double peak = 0.0;
        for (double v : amp) peak = std::max(peak, std::fabs(v));
        for (std::size_t k = 0; k < C.size(); ++k)
            mask_p[k] = (peak == 0.0 || std::fabs(amp[k]) <= config.node_epsilon * peak) ? 1 : 0;
    }
    std::vector<std::complex<double>> fc(C.size()), lz1(C.size());
    std::size_t uf = 0;
    for (int k = 0; k < np; ++k) {
        if (mask_p[k]) continue;
        const auto& cp = C[(k + 1) % np];
        const auto& cm = C[(k + np - 1) % np];
        fc[k] = (cp - 2.0 * C[k] + cm) / (hp * hp) / C[k];
        lz1[k] = (cp - cm) / (2.0 * hp) / C[k];
        ++uf;
    }
    if (ur == 0 || ut == 0 || uf == 0)
        throw DiagnosticsError("operator_ratios: an axis has no unmasked samples");
    const std::size_t samples = ur * ut * uf;

    // Ratios centered on their predictions (see RatioAccumulator::finalize):
    //   H:    -kappa*(ra + pb/r^2 + fc/(r sin)^2) + V - E
    //   L^2:  -hbar^2*(pb + fc/sin^2)            - alpha_theta^2
    //   Lz^2: -hbar^2*fc                         - alpha_phi^2
    const double E = state.E();
    const double at2 = state.alpha_theta_sq();
    const double ap = state.alpha_phi();

    PhiSums f_h; // phi-axis sums shared by all three averaged operators
    for (int k = 0; k < np; ++k) {
        if (mask_p[k]) continue;
        f_h.W += std::norm(C[k]);
        f_h.center += std::norm(C[k]) * fc[k].real();
        ++f_h.count;
    }
    f_h.center /= f_h.W;
    for (int k = 0; k < np; ++k) {
        if (mask_p[k]) continue;
        const double w = std::norm(C[k]);
        const double g = fc[k].real() - f_h.center, im = fc[k].imag();
        f_h.S1 += w * g;
        f_h.S2 += w * g * g;
        f_h.Sim += w * std::fabs(im);
        f_h.re_lo = std::min(f_h.re_lo, g);
        f_h.re_hi = std::max(f_h.re_hi, g);
        f_h.im_max = std::max(f_h.im_max, std::fabs(im));
    }

    OperatorRatioReport rep;
    rep.phi_loop = loop;

    RatioAccumulator acc_h;
    for (std::size_t i = 0; i < A.size(); ++i) {
        if (mask_r[i]) continue;
        const double r = rg.r(static_cast<int>(i));
        const double inv_r2 = 1.0 / (r * r);
        const double base = -kappa * ra[i] + V[i] - E;
        for (std::size_t j = 0; j < B.size(); ++j) {
            if (mask_t[j]) continue;
            acc_h.add(wr[i] * wt[j], base - kappa * pb[j] * inv_r2,
                      -kappa * inv_r2 * inv_s2[j], f_h);
        }
    }
    rep.hamiltonian = acc_h.finalize(E, 0.0, std::max({hr, ht, hp}), samples);

    RatioAccumulator acc_l2;
    for (std::size_t j = 0; j < B.size(); ++j) {
        if (mask_t[j]) continue;
        acc_l2.add(wt[j], -hbar * hbar * pb[j] - at2, -hbar * hbar * inv_s2[j], f_h);
    }
    rep.l_squared = acc_l2.finalize(at2, -hbar * config.c_theta, std::max(ht, hp), samples);

    RatioAccumulator acc_lz2;
    acc_lz2.add(1.0, -ap * ap, -hbar * hbar, f_h);
    rep.lz_squared = acc_lz2.finalize(ap * ap, -hbar * config.c_phi, hp, samples);

    rep.lz_ratio.assign(C.size(), {0.0, 0.0});
    rep.lz_mask = mask_p;
    rep.lz_predicted = circulating ? ap : 0.0;
    std::complex<double> lz_sum = 0.0;
    double lz_w = 0.0;
    for (int k = 0; k < np; ++k) {
        if (mask_p[k]) continue;
        rep.lz_ratio[k] = std::complex<double>(0.0, -hbar) * lz1[k];
        lz_sum += std::norm(C[k]) * rep.lz_ratio[k];
        lz_w += std::norm(C[k]);
    }
    const std::complex<double> lz_mean = lz_sum / lz_w;
    double lz_dev = 0.0;
    for (int k = 0; k < np; ++k) {
        if (mask_p[k]) continue;
        lz_dev = std::max(lz_dev, std::abs(rep.lz_ratio[k] - lz_mean));
    }
    rep.lz_constant = lz_dev <= std::max(1e-9, 1e-6 * std::abs(lz_mean));
    return rep;
}

} // namespace qnb
