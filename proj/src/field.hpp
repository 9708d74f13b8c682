#pragma once

#include <span>
#include <vector>

namespace qnb {

// Trapezoidal quadrature of samples on a uniform grid with spacing h.
double trapezoid(std::span<const double> f, double h);

// Trapezoid of f*w (w = measure weight, e.g. r^2 or sin(theta)).
double trapezoid_weighted(std::span<const double> f, std::span<const double> w, double h);

// Composite Simpson quadrature of samples spanning the full interval
// (both end values included; an odd panel count falls back to the 3/8 rule
// on the last three panels). Fourth-order where the trapezoid's O(h^2)
// end-slope bias matters, e.g. norms on grids padded with their boundary
// zeros.
double simpson_closed(std::span<const double> f, double h);

// Scales R so that trapezoid(R^2) = 1 and the first sample that is nonzero
// (above 1e-12 of max|R|) is positive. Throws std::domain_error when R is
// identically zero.
std::vector<double> normalize(std::span<const double> R, double h);

// Same, but normalizing integral of R^2*w (w >= 0).
std::vector<double> normalize_weighted(std::span<const double> R, std::span<const double> w,
                                       double h);

// In-place sign fix only (first sample above 1e-12 of max|R| made positive).
void fix_sign(std::vector<double>& R);

// d/dx and d2/dx2 by second-order stencils: central in the interior,
// one-sided three/four-point formulas at the ends.
std::vector<double> derivative(std::span<const double> f, double h);
std::vector<double> second_derivative(std::span<const double> f, double h);

// Local cubic (4-point Lagrange) interpolation of uniformly sampled data.
// x is measured from the first sample; out-of-range x clamps to the edge
// stencils (callers are expected to stay inside the grid).
struct CubicInterpolant {
    double x0 = 0.0;   // coordinate of sample 0
    double h = 1.0;
    std::vector<double> f;

    double value(double x) const;
    double slope(double x) const;
};

} // namespace qnb
