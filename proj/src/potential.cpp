#include "potential.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace qnb {

static void check_table(const std::vector<double>& x, const std::vector<double>& v) {
    if (x.size() != v.size() || x.size() < 2)
        throw std::invalid_argument("tabulated potential: need matching sample arrays (>= 2)");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(v[i]))
            throw std::invalid_argument("tabulated potential: non-finite sample");
        if (i > 0 && !(x[i] > x[i - 1]))
            throw std::invalid_argument("tabulated potential: abscissae must increase");
    }
}

double interp_linear(const std::vector<double>& xs, const std::vector<double>& vs, double x) {
    if (x < xs.front() || x > xs.back())
        throw std::domain_error("tabulated potential: point outside tabulated range");
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t i = (it == xs.end()) ? xs.size() - 1 : static_cast<std::size_t>(it - xs.begin());
    if (i == 0) i = 1;
    const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return vs[i - 1] + t * (vs[i] - vs[i - 1]);
}

double interp_slope(const std::vector<double>& xs, const std::vector<double>& vs, double x) {
    if (x < xs.front() || x > xs.back())
        throw std::domain_error("tabulated potential: point outside tabulated range");
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t i = (it == xs.end()) ? xs.size() - 1 : static_cast<std::size_t>(it - xs.begin());
    if (i == 0) i = 1;
    return (vs[i] - vs[i - 1]) / (xs[i] - xs[i - 1]);
}

static std::string describe_fmt(const char* fmt, double p1, double p2 = 0.0) {
    char buf[128];
    std::snprintf(buf, sizeof buf, fmt, p1, p2);
    return buf;
}

Potential1D Potential1D::box(double a) {
    if (!(a > 0.0)) throw std::invalid_argument("box: width must be positive");
    Potential1D p;
    p.kind_ = Kind::box;
    p.a_ = a;
    return p;
}

Potential1D Potential1D::harmonic(double omega, const Units& units) {
    units.validate();
    if (!(omega > 0.0)) throw std::invalid_argument("harmonic: omega must be positive");
    Potential1D p;
    p.kind_ = Kind::harmonic;
    p.omega_ = omega;
    p.c_harm_ = 0.5 * units.mass * omega * omega;
    return p;
}

Potential1D Potential1D::finite_well(double v0, double a) {
    if (!(v0 > 0.0) || !(a > 0.0))
        throw std::invalid_argument("finite_well: depth and width must be positive");
    Potential1D p;
    p.kind_ = Kind::finite_well;
    p.v0_ = v0;
    p.a_ = a;
    return p;
}

Potential1D Potential1D::tabulated(std::vector<double> x, std::vector<double> v) {
    check_table(x, v);
    Potential1D p;
    p.kind_ = Kind::tabulated;
    p.tab_x_ = std::move(x);
    p.tab_v_ = std::move(v);
    return p;
}

double Potential1D::operator()(double x) const {
    switch (kind_) {
        case Kind::box:
            if (x < 0.0 || x > a_) throw std::domain_error("box: point outside [0, a]");
            return 0.0;
        case Kind::harmonic:
            return c_harm_ * x * x;
        case Kind::finite_well: {
            // Grid samples that land on the step take the mean of the two
            // sides; sampling either one-sided value there degrades grid
            // solvers from second- to first-order convergence.
            const double edge = 0.5 * a_;
            const double d = std::fabs(x) - edge;
            if (std::fabs(d) <= 1e-12 * std::max(1.0, edge)) return 0.5 * v0_;
            return d < 0.0 ? 0.0 : v0_;
        }
        case Kind::tabulated:
            return interp_linear(tab_x_, tab_v_, x);
    }
    return 0.0;
}

double Potential1D::slope(double x) const {
    switch (kind_) {
        case Kind::box:
            if (x < 0.0 || x > a_) throw std::domain_error("box: point outside [0, a]");
            return 0.0;
        case Kind::harmonic:
            return 2.0 * c_harm_ * x;
        case Kind::finite_well:
            return 0.0;
        case Kind::tabulated:
            return interp_slope(tab_x_, tab_v_, x);
    }
    return 0.0;
}

std::vector<double> Potential1D::evaluate(const Grid1D& grid) const {
    std::vector<double> v(grid.n);
    for (int i = 0; i < grid.n; ++i) v[i] = (*this)(grid.x(i));
    return v;
}

double Potential1D::domain_min() const {
    switch (kind_) {
        case Kind::box: return 0.0;
        case Kind::tabulated: return tab_x_.front();
        default: return -std::numeric_limits<double>::infinity();
    }
}

double Potential1D::domain_max() const {
    switch (kind_) {
        case Kind::box: return a_;
        case Kind::tabulated: return tab_x_.back();
        default: return std::numeric_limits<double>::infinity();
    }
}

std::string Potential1D::describe() const {
    switch (kind_) {
        case Kind::box: return describe_fmt("box a=%.17g", a_);
        case Kind::harmonic: return describe_fmt("harmonic omega=%.17g", omega_);
        case Kind::finite_well: return describe_fmt("finite_well v0=%.17g a=%.17g", v0_, a_);
        case Kind::tabulated: return "tabulated";
    }
    return "?";
}

CentralPotential CentralPotential::coulomb(double z) {
    if (!(z > 0.0)) throw std::invalid_argument("coulomb: charge must be positive");
    CentralPotential p;
    p.kind_ = Kind::coulomb;
    p.z_ = z;
    return p;
}

CentralPotential CentralPotential::harmonic3d(double omega, const Units& units) {
    units.validate();
    if (!(omega > 0.0)) throw std::invalid_argument("harmonic3d: omega must be positive");
    CentralPotential p;
    p.kind_ = Kind::harmonic3d;
    p.omega_ = omega;
    p.c_harm_ = 0.5 * units.mass * omega * omega;
    return p;
}

CentralPotential CentralPotential::tabulated(std::vector<double> r, std::vector<double> v) {
    check_table(r, v);
    if (!(r.front() > 0.0))
        throw std::invalid_argument("tabulated central potential: r must be positive");
    CentralPotential p;
    p.kind_ = Kind::tabulated;
    p.tab_r_ = std::move(r);
    p.tab_v_ = std::move(v);
    return p;
}

double CentralPotential::operator()(double r) const {
    if (!(r > 0.0)) throw std::domain_error("central potential: r must be positive");
    switch (kind_) {
        case Kind::coulomb: return -z_ / r;
        case Kind::harmonic3d: return c_harm_ * r * r;
        case Kind::tabulated: return interp_linear(tab_r_, tab_v_, r);
    }
    return 0.0;
}

double CentralPotential::slope(double r) const {
    if (!(r > 0.0)) throw std::domain_error("central potential: r must be positive");
    switch (kind_) {
        case Kind::coulomb: return z_ / (r * r);
        case Kind::harmonic3d: return 2.0 * c_harm_ * r;
        case Kind::tabulated: return interp_slope(tab_r_, tab_v_, r);
    }
    return 0.0;
}

std::vector<double> CentralPotential::evaluate(const RadialGrid& grid) const {
    std::vector<double> v(grid.n);
    for (int i = 0; i < grid.n; ++i) v[i] = (*this)(grid.r(i));
    return v;
}

std::string CentralPotential::describe() const {
    switch (kind_) {
        case Kind::coulomb: return describe_fmt("coulomb z=%.17g", z_);
        case Kind::harmonic3d: return describe_fmt("harmonic3d omega=%.17g", omega_);
        case Kind::tabulated: return "tabulated";
    }
    return "?";
}

} // namespace qnb
