#include "field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qnb {

double trapezoid(std::span<const double> f, double h) {
    if (f.size() < 2) throw std::invalid_argument("trapezoid: need at least 2 samples");
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
    return s * h;
}

double trapezoid_weighted(std::span<const double> f, std::span<const double> w, double h) {
    if (f.size() != w.size()) throw std::invalid_argument("trapezoid: size mismatch");
    if (f.size() < 2) throw std::invalid_argument("trapezoid: need at least 2 samples");
    double s = 0.5 * (f.front() * w.front() + f.back() * w.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i] * w[i];
    return s * h;
}

double simpson_closed(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    if (n < 2) throw std::invalid_argument("simpson: need at least 2 samples");
    if (n == 2) return 0.5 * h * (f[0] + f[1]);
    std::size_t panels = n - 1;
    double tail = 0.0;
    if (panels % 2 != 0) {
        // 3/8 rule on the last three panels keeps fourth order
        tail = 3.0 * h / 8.0 * (f[n - 4] + 3.0 * f[n - 3] + 3.0 * f[n - 2] + f[n - 1]);
        panels -= 3;
        if (panels == 0) return tail;
    }
    const std::size_t last = panels; // index of the closing sample
    double s = f[0] + f[last];
    for (std::size_t i = 1; i < last; i += 2) s += 4.0 * f[i];
    for (std::size_t i = 2; i < last; i += 2) s += 2.0 * f[i];
    return s * h / 3.0 + tail;
}

static double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

void fix_sign(std::vector<double>& R) {
    const double floor = 1e-12 * max_abs(R);
    for (double x : R) {
        if (std::fabs(x) > floor) {
            if (x < 0.0)
                for (double& y : R) y = -y;
            return;
        }
    }
}

std::vector<double> normalize(std::span<const double> R, double h) {
    std::vector<double> sq(R.size());
    for (std::size_t i = 0; i < R.size(); ++i) sq[i] = R[i] * R[i];
    const double norm2 = trapezoid(sq, h);
    if (!(norm2 > 0.0) || !std::isfinite(norm2))
        throw std::domain_error("normalize: amplitude is identically zero or non-finite");
    const double scale = 1.0 / std::sqrt(norm2);
    std::vector<double> out(R.size());
    for (std::size_t i = 0; i < R.size(); ++i) out[i] = R[i] * scale;
    fix_sign(out);
    return out;
}

std::vector<double> normalize_weighted(std::span<const double> R, std::span<const double> w,
                                       double h) {
    std::vector<double> sq(R.size());
    for (std::size_t i = 0; i < R.size(); ++i) sq[i] = R[i] * R[i];
    const double norm2 = trapezoid_weighted(sq, w, h);
    if (!(norm2 > 0.0) || !std::isfinite(norm2))
        throw std::domain_error("normalize: amplitude is identically zero or non-finite");
    const double scale = 1.0 / std::sqrt(norm2);
    std::vector<double> out(R.size());
    for (std::size_t i = 0; i < R.size(); ++i) out[i] = R[i] * scale;
    fix_sign(out);
    return out;
}

std::vector<double> derivative(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    if (n < 3) throw std::invalid_argument("derivative: need at least 3 samples");
    std::vector<double> d(n);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    return d;
}

std::vector<double> second_derivative(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    if (n < 4) throw std::invalid_argument("second_derivative: need at least 4 samples");
    std::vector<double> d(n);
    const double h2 = h * h;
    // one-sided 4-point formulas are second-order accurate
    d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
    d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
    return d;
}

// 4-point Lagrange stencil starting at sample i0, local coordinate t in units of h.
static void cubic_weights(double t, double wv[4]) {
    wv[0] = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
    wv[1] = t * (t - 2.0) * (t - 3.0) / 2.0;
    wv[2] = -t * (t - 1.0) * (t - 3.0) / 2.0;
    wv[3] = t * (t - 1.0) * (t - 2.0) / 6.0;
}

static void cubic_slope_weights(double t, double wd[4]) {
    wd[0] = -(3.0 * t * t - 12.0 * t + 11.0) / 6.0;
    wd[1] = (3.0 * t * t - 10.0 * t + 6.0) / 2.0;
    wd[2] = -(3.0 * t * t - 8.0 * t + 3.0) / 2.0;
    wd[3] = (3.0 * t * t - 6.0 * t + 2.0) / 6.0;
}

static std::size_t cubic_base(double x, double x0, double h, std::size_t n, double& t) {
    if (n < 4) throw std::invalid_argument("cubic interpolation: need at least 4 samples");
    double s = (x - x0) / h;
    long i = static_cast<long>(std::floor(s)) - 1; // center the 4-point stencil
    i = std::clamp(i, 0L, static_cast<long>(n) - 4);
    t = s - i;
    return static_cast<std::size_t>(i);
}

double CubicInterpolant::value(double x) const {
    double t;
    const std::size_t i = cubic_base(x, x0, h, f.size(), t);
    double w[4];
    cubic_weights(t, w);
    return w[0] * f[i] + w[1] * f[i + 1] + w[2] * f[i + 2] + w[3] * f[i + 3];
}

double CubicInterpolant::slope(double x) const {
    double t;
    const std::size_t i = cubic_base(x, x0, h, f.size(), t);
    double w[4];
    cubic_slope_weights(t, w);
    return (w[0] * f[i] + w[1] * f[i + 1] + w[2] * f[i + 2] + w[3] * f[i + 3]) / h;
}

} // namespace qnb
