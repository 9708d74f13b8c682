#pragma once

// Closed-form and brute-force reference values the tests compare against.
// Everything here is independent of the library's solution path: analytic
// spectra, textbook recurrences, transcendental-equation bisection and
// Richardson-extrapolated finite differences only.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "units.hpp"

namespace oracle {

// hard-wall well of width a: E_n = n^2 pi^2 hbar^2 / (2 m a^2), n = 1, 2, ...
inline double box_energy(int n, double a, const qnb::Units& u = {}) {
    const double q = n * std::numbers::pi / a;
    return 0.5 * u.hbar * u.hbar * q * q / u.mass;
}

// E_n = (n + 1/2) hbar omega, n = 0, 1, ...
inline double harmonic_energy(int n, double omega, const qnb::Units& u = {}) {
    return (n + 0.5) * u.hbar * omega;
}

// V = -Z/r: E_n = -m Z^2 / (2 hbar^2 n^2), n = 1, 2, ...
inline double coulomb_energy(int n, double z, const qnb::Units& u = {}) {
    return -u.mass * z * z / (2.0 * u.hbar * u.hbar * n * n);
}

// isotropic 3D oscillator: E = (2 n_r + l + 3/2) hbar omega
inline double harmonic3d_energy(int n_r, int l, double omega, const qnb::Units& u = {}) {
    return (2.0 * n_r + l + 1.5) * u.hbar * omega;
}

// Associated Legendre P_l^m(x) by the standard upward recurrence
// (numerical-recipes style), no Condon-Shortley phase surprises beyond the
// usual (-1)^m convention baked into the double-factorial seed.
inline double assoc_legendre(int l, int m, double x) {
    if (m < 0 || m > l || std::fabs(x) > 1.0)
        throw std::invalid_argument("assoc_legendre: bad arguments");
    double pmm = 1.0;
    if (m > 0) {
        const double somx2 = std::sqrt((1.0 - x) * (1.0 + x));
        double fact = 1.0;
        for (int i = 0; i < m; ++i) {
            pmm *= -fact * somx2;
            fact += 2.0;
        }
    }
    if (l == m) return pmm;
    double pmmp1 = x * (2.0 * m + 1.0) * pmm;
    if (l == m + 1) return pmmp1;
    double pll = 0.0;
    for (int ll = m + 2; ll <= l; ++ll) {
        pll = (x * (2.0 * ll - 1.0) * pmmp1 - (ll + m - 1.0) * pmm) / (ll - m);
        pmm = pmmp1;
        pmmp1 = pll;
    }
    return pll;
}

// Bound levels of the finite well V = 0 (|x| <= a/2), V = V0 (outside) in
// natural units, found by bisecting the even/odd transcendental equations
//   even:  y tan(y)  = sqrt(y0^2 - y^2)
//   odd:  -y cot(y)  = sqrt(y0^2 - y^2),   y = (a/2) k,  y0 = (a/2) sqrt(2 V0).
// Returns all bound E in increasing order.
inline std::vector<double> finite_well_levels(double v0, double a) {
    const double y0 = 0.5 * a * std::sqrt(2.0 * v0);
    auto bisect = [](const std::function<double(double)>& f, double lo, double hi) {
        double flo = f(lo);
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            const double fm = f(mid);
            if ((fm < 0.0) == (flo < 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };
    std::vector<double> ys;
    const double eps = 1e-9;
    // even branches start at n*pi, odd at n*pi + pi/2; each holds at most one root
    for (int n = 0;; ++n) {
        const double lo = n * std::numbers::pi;
        if (lo >= y0) break;
        const double hi = std::min(lo + 0.5 * std::numbers::pi, y0);
        auto f = [&](double y) { return y * std::tan(y) - std::sqrt(y0 * y0 - y * y); };
        if (f(lo + eps) < 0.0 && f(hi - eps) > 0.0) ys.push_back(bisect(f, lo + eps, hi - eps));
    }
    for (int n = 0;; ++n) {
        const double lo = n * std::numbers::pi + 0.5 * std::numbers::pi;
        if (lo >= y0) break;
        const double hi = std::min(lo + 0.5 * std::numbers::pi, y0);
        auto f = [&](double y) { return -y / std::tan(y) - std::sqrt(y0 * y0 - y * y); };
        if (f(lo + eps) < 0.0 && f(hi - eps) > 0.0) ys.push_back(bisect(f, lo + eps, hi - eps));
    }
    std::sort(ys.begin(), ys.end());
    std::vector<double> es;
    for (double y : ys) es.push_back(2.0 * y * y / (a * a)); // E = k^2/2, k = 2y/a
    return es;
}

// Richardson-extrapolated second derivative of an analytic function:
// independent check for the grid stencils.
inline double d2_richardson(const std::function<double(double)>& f, double x, double h) {
    auto d2 = [&](double hh) { return (f(x + hh) - 2.0 * f(x) + f(x - hh)) / (hh * hh); };
    return (4.0 * d2(0.5 * h) - d2(h)) / 3.0;
}

} // namespace oracle
