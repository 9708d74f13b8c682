#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace qnb {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Three-term Numerov problem y'' + k(x) y = 0 on n uniform samples,
// k_i = scale * (eigen - w_i). One engine serves the 1D, radial and polar
// equations; they differ only in w, scale and boundary seeds.
struct NumerovProblem {
    int n = 0;
    double h = 0.0;
    double scale = 1.0;
    std::vector<double> w;
    // Boundary bands, possibly eigenvalue-dependent. seed_lo fills
    // y[0..seed_len_lo-1] boundary-inward, seed_hi fills y[n-1..n-seed_len_hi]
    // boundary-inward; the recurrence starts at the inner band edge. A band
    // longer than two samples lets a singular-point series carry the solution
    // past the region where the stencil's accuracy would collapse (the polar
    // equation's poles); ordinary problems keep the two-sample default.
    int seed_len_lo = 2;
    int seed_len_hi = 2;
    std::function<std::vector<double>(double eigen)> seed_lo;
    std::function<std::vector<double>(double eigen)> seed_hi;
    double seed_scale = 1.0; // overall amplitude knob; physics is invariant

    void validate() const;
};

enum class ShootDirection { forward, backward };

struct Shot {
    std::vector<double> y;      // full length; meaningful on the integrated range
    int first = 0, last = 0;    // inclusive integrated range
    int nodes = 0;              // strict sign changes on the range
    double log_derivative = 0.0; // d(ln y)/dx at the match index
    int rescales = 0;           // in-place rescale count (overflow guard)
};

// Integrate from one boundary through `through` (inclusive). The shot keeps
// going one extra sample when available so the log-derivative at `through`
// can use a centered difference.
Shot numerov_shoot(const NumerovProblem& p, double eigen, ShootDirection dir, int through);

// Node count of the full forward solution (Sturm counter for bracketing).
int numerov_nodes(const NumerovProblem& p, double eigen);

struct EigenSolveConfig {
    double bisection_tol = 1e-10; // relative width of the final energy bracket
    double match_fraction = 0.5;  // where the two branches are matched
    int max_iterations = 240;
};

struct EigenResult {
    double eigen = 0.0;
    std::vector<double> y; // assembled two-branch solution, unnormalized
    int nodes = 0;
    int iterations = 0;
    double residual = 0.0;            // max |d2y + h^2 k y| / max|y| (plain stencil)
    bool converged = false;
    bool matched = false;             // branch-Wronskian refinement bracketed a root
    double boundary_amplitude_lo = 0.0; // |y[1]| / max|y|
    double boundary_amplitude_hi = 0.0; // |y[n-2]| / max|y|
};

// Bisection for the eigenvalue with `target_nodes` interior nodes inside
// [lo, hi]. Requires nodes(lo) <= target_nodes and nodes(hi) > target_nodes.
// Node-count bisection brackets the state; a sign change of the Numerov
// recurrence residual at the match index then refines it (log-derivative
// matching); if that residual does not change sign the node bisection simply
// continues to tolerance.
EigenResult numerov_eigen(const NumerovProblem& p, double lo, double hi, int target_nodes,
                          const EigenSolveConfig& cfg);

} // namespace qnb
