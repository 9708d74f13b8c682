#include "numerov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qnb {

void NumerovProblem::validate() const {
    if (n < 5) throw std::invalid_argument("numerov: need at least 5 samples");
    if (!(h > 0.0)) throw std::invalid_argument("numerov: spacing must be positive");
    if (static_cast<int>(w.size()) != n)
        throw std::invalid_argument("numerov: w size != n");
    for (double v : w)
        if (!std::isfinite(v)) throw std::invalid_argument("numerov: non-finite potential sample");
    if (!seed_lo || !seed_hi) throw std::invalid_argument("numerov: missing boundary seeds");
    if (seed_len_lo < 2 || seed_len_hi < 2)
        throw std::invalid_argument("numerov: seed bands need at least two samples");
    if (seed_len_lo + seed_len_hi > n - 1)
        throw std::invalid_argument("numerov: seed bands leave no interior samples");
    if (seed_scale == 0.0 || !std::isfinite(seed_scale))
        throw std::invalid_argument("numerov: seed_scale must be finite and nonzero");
}

namespace {

constexpr double rescale_limit = 1e250;

inline double t_coeff(const NumerovProblem& p, double eigen, int i) {
    return p.h * p.h / 12.0 * p.scale * (eigen - p.w[i]);
}

int count_nodes(const std::vector<double>& y, int first, int last) {
    int nodes = 0;
    int sign = 0;
    for (int i = first; i <= last; ++i) {
        if (y[i] == 0.0) continue;
        const int s = y[i] > 0.0 ? 1 : -1;
        if (sign != 0 && s != sign) ++nodes;
        sign = s;
    }
    return nodes;
}

} // namespace

Shot numerov_shoot(const NumerovProblem& p, double eigen, ShootDirection dir, int through) {
    p.validate();
    if (through < 0 || through >= p.n)
        throw std::invalid_argument("numerov_shoot: match index out of range");

    Shot s;
    s.y.assign(p.n, 0.0);

    auto step = [&](int i, int prev, int next) {
        // (1+T_next) y_next = (2 - 10 T_i) y_i - (1+T_prev) y_prev
        const double ti = t_coeff(p, eigen, i);
        const double tp = t_coeff(p, eigen, prev);
        const double tn = t_coeff(p, eigen, next);
        s.y[next] = ((2.0 - 10.0 * ti) * s.y[i] - (1.0 + tp) * s.y[prev]) / (1.0 + tn);
    };

    if (dir == ShootDirection::forward) {
        const auto seed = p.seed_lo(eigen);
        if (static_cast<int>(seed.size()) != p.seed_len_lo)
            throw std::invalid_argument("numerov_shoot: seed_lo length mismatch");
        for (int j = 0; j < p.seed_len_lo; ++j) s.y[j] = seed[j] * p.seed_scale;
        s.first = 0;
        s.last = std::min(through + 1, p.n - 1); // one extra for the centered derivative
        for (int i = p.seed_len_lo - 1; i < s.last; ++i) {
            step(i, i - 1, i + 1);
            if (std::fabs(s.y[i + 1]) > rescale_limit) {
                const double f = 1.0 / std::fabs(s.y[i + 1]);
                for (int j = s.first; j <= i + 1; ++j) s.y[j] *= f;
                ++s.rescales;
            }
        }
    } else {
        const auto seed = p.seed_hi(eigen);
        if (static_cast<int>(seed.size()) != p.seed_len_hi)
            throw std::invalid_argument("numerov_shoot: seed_hi length mismatch");
        for (int j = 0; j < p.seed_len_hi; ++j) s.y[p.n - 1 - j] = seed[j] * p.seed_scale;
        s.first = std::max(through - 1, 0);
        s.last = p.n - 1;
        for (int i = p.n - p.seed_len_hi; i > s.first; --i) {
            step(i, i + 1, i - 1);
            if (std::fabs(s.y[i - 1]) > rescale_limit) {
                const double f = 1.0 / std::fabs(s.y[i - 1]);
                for (int j = i - 1; j <= s.last; ++j) s.y[j] *= f;
                ++s.rescales;
            }
        }
    }

    // The recurrence loses its sign ordering — and with it the Sturm node
    // count — on samples where 1 + T drops to zero or below, which happens
    // next to steeply diverging barriers (singular endpoints, strong
    // centrifugal terms). Integration proceeds through such samples, but
    // their signs carry no nodal information, so trim them off the counted
    // range.
    int cf = s.first, cl = s.last;
    while (cf < cl && t_coeff(p, eigen, cf) <= -0.5) ++cf;
    while (cl > cf && t_coeff(p, eigen, cl) <= -0.5) --cl;
    s.nodes = count_nodes(s.y, cf, cl);

    // log-derivative at the requested index
    const int i = through;
    double d;
    if (i - 1 >= s.first && i + 1 <= s.last)
        d = (s.y[i + 1] - s.y[i - 1]) / (2.0 * p.h);
    else if (i + 2 <= s.last)
        d = (-3.0 * s.y[i] + 4.0 * s.y[i + 1] - s.y[i + 2]) / (2.0 * p.h);
    else if (i - 2 >= s.first)
        d = (3.0 * s.y[i] - 4.0 * s.y[i - 1] + s.y[i - 2]) / (2.0 * p.h);
    else
        d = std::numeric_limits<double>::quiet_NaN();
    s.log_derivative = (s.y[i] != 0.0) ? d / s.y[i] : std::numeric_limits<double>::infinity();
    return s;
}

int numerov_nodes(const NumerovProblem& p, double eigen) {
    return numerov_shoot(p, eigen, ShootDirection::forward, p.n - 1).nodes;
}

namespace {

// Two-point Wronskian of the forward and backward branches at the match
// index, each branch normalized locally so overflow-rescaled magnitudes
// cannot overflow the product. Zero exactly when the branches are
// proportional, i.e. when `eigen` solves the matched problem; unlike a
// log-derivative mismatch it stays finite when a branch node crosses the
// match index, so its sign is a reliable bisection predicate.
double branch_wronskian(const NumerovProblem& p, double eigen, int im, bool& ok) {
    const Shot f = numerov_shoot(p, eigen, ShootDirection::forward, im);
    const Shot b = numerov_shoot(p, eigen, ShootDirection::backward, im);
    const double fs = std::max(std::fabs(f.y[im - 1]), std::fabs(f.y[im]));
    const double bs = std::max(std::fabs(b.y[im - 1]), std::fabs(b.y[im]));
    if (fs == 0.0 || bs == 0.0) {
        ok = false;
        return 0.0;
    }
    ok = true;
    return (f.y[im - 1] / fs) * (b.y[im] / bs) - (b.y[im - 1] / bs) * (f.y[im] / fs);
}

} // namespace

EigenResult numerov_eigen(const NumerovProblem& p, double lo, double hi, int target_nodes,
                          const EigenSolveConfig& cfg) {
    p.validate();
    if (!(hi > lo)) throw std::invalid_argument("numerov_eigen: empty bracket");

    EigenResult r;
    auto tol = [&] { return cfg.bisection_tol * std::max({std::fabs(lo), std::fabs(hi), 1e-30}); };

    if (numerov_nodes(p, lo) > target_nodes || numerov_nodes(p, hi) <= target_nodes)
        throw SolverError("numerov_eigen: bracket does not isolate the requested node count");
    r.iterations += 2;
    const double bound_lo = lo;

    // phase 1: node-count bisection down to a narrow bracket
    while (hi - lo > 64.0 * tol() && r.iterations < cfg.max_iterations) {
        const double mid = 0.5 * (lo + hi);
        if (numerov_nodes(p, mid) <= target_nodes)
            lo = mid;
        else
            hi = mid;
        ++r.iterations;
    }

    // phase 2: pick the match index away from nodes of either branch and
    // outside the seed bands (the mismatch there would measure the band's
    // stencil truncation, not branch consistency)
    const int n = p.n;
    const int im_min = std::max(2, p.seed_len_lo);
    const int im_max = std::min(n - 3, n - 1 - p.seed_len_hi);
    int im = std::clamp(static_cast<int>(std::lround(cfg.match_fraction * (n - 1))), im_min,
                        std::max(im_min, im_max));
    {
        const double mid = 0.5 * (lo + hi);
        const Shot f = numerov_shoot(p, mid, ShootDirection::forward, n - 1);
        const Shot b = numerov_shoot(p, mid, ShootDirection::backward, 0);
        double fmax = 0.0, bmax = 0.0;
        for (int i = im_min; i <= im_max; ++i) {
            fmax = std::max(fmax, std::fabs(f.y[i]));
            bmax = std::max(bmax, std::fabs(b.y[i]));
        }
        if (fmax > 0.0 && bmax > 0.0) {
            // both branches are healthy only inside the state's support;
            // beyond it the one integrated through the forbidden region has
            // decayed into rounding noise. Join where the normalized product
            // peaks, searching the whole interior — the support may sit far
            // from the configured fraction when the window is generous.
            double best = -1.0;
            for (int i = im_min; i <= im_max; ++i) {
                const double score = std::fabs(f.y[i]) / fmax * (std::fabs(b.y[i]) / bmax);
                if (score > best) {
                    best = score;
                    im = i;
                }
            }
        }
        r.iterations += 2;
    }

    // phase 3: Wronskian-sign bisection. For regular endpoints the root sits
    // inside the phase-1 bracket (a node enters the tail exactly at the
    // eigenvalue), but near a soft singular endpoint the entering node stays
    // hidden below the first grid spacing and the node transition lags the
    // eigenvalue — then the root lies below the bracket, so widen downward
    // (never past the caller's floor or the previous node transition) until
    // the sign flips.
    bool ok_lo = false, ok_hi = false;
    double g_lo = branch_wronskian(p, lo, im, ok_lo);
    double g_hi = branch_wronskian(p, hi, im, ok_hi);
    r.iterations += 2;
    r.matched = ok_lo && ok_hi && std::signbit(g_lo) != std::signbit(g_hi);

    if (!r.matched && ok_lo && ok_hi) {
        double upper = lo;
        double g_upper = g_lo;
        double step = std::max(hi - lo, 64.0 * tol());
        while (upper > bound_lo && r.iterations < cfg.max_iterations) {
            double a = std::max(bound_lo, upper - step);
            step *= 2.0;
            bool last_probe = a <= bound_lo;
            ++r.iterations;
            if (numerov_nodes(p, a) < target_nodes) {
                // overshot the previous node transition; pull back just above
                // it — every eigenvalue with this node count lies above, so
                // this is the final probe either way
                double below = a, above = upper;
                while (above - below > tol() && r.iterations < cfg.max_iterations) {
                    const double mid = 0.5 * (below + above);
                    if (numerov_nodes(p, mid) < target_nodes)
                        below = mid;
                    else
                        above = mid;
                    ++r.iterations;
                }
                a = above;
                last_probe = true;
            }
            bool ok = false;
            const double g = branch_wronskian(p, a, im, ok);
            ++r.iterations;
            if (!ok) break;
            if (std::signbit(g) != std::signbit(g_upper)) {
                lo = a;
                g_lo = g;
                hi = upper;
                g_hi = g_upper;
                r.matched = true;
                break;
            }
            if (last_probe) break;
            upper = a;
            g_upper = g;
        }
    }

    while (hi - lo > tol() && r.iterations < cfg.max_iterations) {
        const double mid = 0.5 * (lo + hi);
        if (r.matched) {
            bool ok = false;
            const double g = branch_wronskian(p, mid, im, ok);
            if (!ok) {
                r.matched = false;
                ++r.iterations;
                continue;
            }
            if (std::signbit(g) == std::signbit(g_lo)) {
                lo = mid;
                g_lo = g;
            } else {
                hi = mid;
            }
        } else {
            if (numerov_nodes(p, mid) <= target_nodes)
                lo = mid;
            else
                hi = mid;
        }
        ++r.iterations;
    }

    r.eigen = 0.5 * (lo + hi);
    r.converged = (hi - lo) <= 2.0 * tol();

    // assemble the two branches, joined where both are nonzero
    Shot f = numerov_shoot(p, r.eigen, ShootDirection::forward, im);
    Shot b = numerov_shoot(p, r.eigen, ShootDirection::backward, im);
    int joint = im;
    for (int off : {0, 1, -1, 2, -2, 3, -3}) {
        joint = std::clamp(im + off, 1, n - 2);
        if (f.y[joint] != 0.0 && b.y[joint] != 0.0) break;
    }
    if (f.y[joint] == 0.0 || b.y[joint] == 0.0)
        throw SolverError("numerov_eigen: degenerate match point");
    if (joint > f.last) f = numerov_shoot(p, r.eigen, ShootDirection::forward, joint);
    if (joint < b.first) b = numerov_shoot(p, r.eigen, ShootDirection::backward, joint);

    r.y.assign(n, 0.0);
    const double s = f.y[joint] / b.y[joint];
    for (int i = 0; i <= joint; ++i) r.y[i] = f.y[i];
    for (int i = joint + 1; i < n; ++i) r.y[i] = b.y[i] * s;

    double ymax = 0.0;
    for (double v : r.y) ymax = std::max(ymax, std::fabs(v));
    if (!(ymax > 0.0)) throw SolverError("numerov_eigen: zero solution assembled");

    r.nodes = count_nodes(r.y, 0, n - 1);
    if (r.nodes != target_nodes) r.converged = false;

    const double h2 = p.h * p.h;
    for (int i = 1; i + 1 < n; ++i) {
        const double k = p.scale * (r.eigen - p.w[i]);
        const double res = std::fabs(r.y[i + 1] - 2.0 * r.y[i] + r.y[i - 1] + h2 * k * r.y[i]);
        r.residual = std::max(r.residual, res / ymax);
    }
    r.boundary_amplitude_lo = std::fabs(r.y[1]) / ymax;
    r.boundary_amplitude_hi = std::fabs(r.y[n - 2]) / ymax;
    return r;
}

} // namespace qnb
