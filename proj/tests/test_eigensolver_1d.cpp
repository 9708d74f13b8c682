#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eigensolver_1d.hpp"
#include "oracles.hpp"

using namespace qnb;
using std::numbers::pi;

TEST_CASE("box spectrum matches n^2 pi^2 / 2 and sampled sines") {
    Units u;
    auto box = Potential1D::box(1.0);
    Grid1D g(0.0, 1.0, 2001);
    ShootingConfig cfg;
    cfg.max_states = 4;
    auto res = solve_bound_states_1d(box, g, u, cfg);
    REQUIRE(res.states.size() == 4);
    CHECK(res.complete);

    // frozen ground level as a guard against silent convention drift
    CHECK(res.states[0].E == doctest::Approx(4.9348022005446793).epsilon(1e-8));
    for (int n = 1; n <= 4; ++n) {
        const auto& st = res.states[n - 1];
        CHECK(st.E == doctest::Approx(oracle::box_energy(n, 1.0, u)).epsilon(1e-8));
        CHECK(st.nodes == n - 1);
        const double amp = std::sqrt(2.0);
        for (int i = 0; i < g.n; i += 7) {
            const double want = amp * std::sin(n * pi * g.x(i));
            CHECK(std::fabs(st.R[i] - want) < 1e-6);
        }
        CHECK(res.info[n - 1].residual < 1e-6);
        CHECK(res.info[n - 1].converged);
    }
    // eigenvalues strictly increase
    for (std::size_t k = 1; k < res.states.size(); ++k)
        CHECK(res.states[k].E > res.states[k - 1].E);
}

TEST_CASE("shoot at the exact box ground energy") {
    Units u;
    auto box = Potential1D::box(1.0);
    Grid1D g(0.0, 1.0, 2001);
    auto shot = shoot(box, 0.5 * pi * pi, g, u, ShootDirection::forward);
    CHECK(shot.nodes == 0);
    double m = 0.0;
    for (double v : shot.R) m = std::max(m, std::fabs(v));
    CHECK(std::fabs(shot.R.back()) < 1e-4 * m); // lands near zero at the far wall
}

TEST_CASE("harmonic spectrum on [-8, 8]: leading states at 1e-6") {
    Units u;
    auto pot = Potential1D::harmonic(1.0, u);
    Grid1D g(-8.0, 8.0, 2001);
    ShootingConfig cfg;
    cfg.max_states = 7;
    auto res = solve_bound_states_1d(pot, g, u, cfg);
    REQUIRE(res.states.size() == 7);
    for (int n = 0; n < 7; ++n) {
        CHECK(res.states[n].E ==
              doctest::Approx(oracle::harmonic_energy(n, 1.0, u)).epsilon(1e-6));
        CHECK(res.states[n].nodes == n);
        CHECK(res.info[n].decay_ok);
    }
}

TEST_CASE("harmonic n = 0..9 on [-8, 8] all clear the default decay check") {
    Units u;
    auto pot = Potential1D::harmonic(1.0, u);
    Grid1D g(-8.0, 8.0, 2001);
    ShootingConfig cfg;
    cfg.max_states = 10;
    auto res = solve_bound_states_1d(pot, g, u, cfg);
    REQUIRE(res.states.size() == 10);
    CHECK(res.complete);
    for (int n = 0; n < 10; ++n) {
        CHECK(res.states[n].E ==
              doctest::Approx(oracle::harmonic_energy(n, 1.0, u)).epsilon(1e-6));
        CHECK(res.info[n].boundary_amplitude <= cfg.decay_threshold);
    }
    // boundary amplitude grows monotonically with n: higher states decay
    // later and carry more weight at the window edge
    for (int n = 1; n < 10; ++n)
        CHECK(res.info[n].boundary_amplitude > res.info[n - 1].boundary_amplitude);
}

TEST_CASE("states above a tightened decay threshold are rejected with a note") {
    Units u;
    auto pot = Potential1D::harmonic(1.0, u);
    Grid1D g(-8.0, 8.0, 2001);
    ShootingConfig cfg;
    cfg.max_states = 10;
    cfg.decay_threshold = 2e-12;
    auto res = solve_bound_states_1d(pot, g, u, cfg);
    CHECK(res.states.size() == 4); // n = 0..3 sit below the bar on this window
    CHECK(!res.complete);
    REQUIRE(!res.warnings.empty());
    CHECK(res.warnings[0].find("decay") != std::string::npos);
    for (const auto& info : res.info) CHECK(info.decay_ok);
}

TEST_CASE("harmonic spectrum with non-natural units") {
    Units u{2.0, 3.0};
    const double omega = 1.5;
    auto pot = Potential1D::harmonic(omega, u);
    // length scale sqrt(hbar/(m omega)) = sqrt(2/4.5) ~ 0.67
    Grid1D g(-6.0, 6.0, 2001);
    ShootingConfig cfg;
    cfg.max_states = 3;
    auto res = solve_bound_states_1d(pot, g, u, cfg);
    REQUIRE(res.states.size() == 3);
    for (int n = 0; n < 3; ++n)
        CHECK(res.states[n].E ==
              doctest::Approx(oracle::harmonic_energy(n, omega, u)).epsilon(1e-6));
}

TEST_CASE("finite well levels agree with the transcendental oracle") {
    Units u;
    const double v0 = 50.0, a = 2.0;
    auto pot = Potential1D::finite_well(v0, a);
    Grid1D g(-6.0, 6.0, 2401);
    ShootingConfig cfg;
    cfg.max_states = 3;
    auto res = solve_bound_states_1d(pot, g, u, cfg);
    auto want = oracle::finite_well_levels(v0, a);
    REQUIRE(res.states.size() == 3);
    REQUIRE(want.size() >= 3);
    // the kink at the well edge limits the stencil order; tolerance reflects it
    for (int k = 0; k < 3; ++k)
        CHECK(res.states[k].E == doctest::Approx(want[k]).epsilon(1e-4));
}

TEST_CASE("user bracket: partial window yields partial result with warning") {
    Units u;
    auto box = Potential1D::box(1.0);
    Grid1D g(0.0, 1.0, 1201);
    ShootingConfig cfg;
    cfg.max_states = 5;
    cfg.energy_bracket = {{1.0, 25.0}}; // holds E_1 and E_2 only
    auto res = solve_bound_states_1d(box, g, u, cfg);
    CHECK(res.states.size() == 2);
    CHECK(!res.complete);
    REQUIRE(!res.warnings.empty());
    CHECK(res.warnings[0].find("2 of 5") != std::string::npos);
}

TEST_CASE("user bracket that excludes the ground state") {
    Units u;
    auto box = Potential1D::box(1.0);
    Grid1D g(0.0, 1.0, 1201);
    ShootingConfig cfg;
    cfg.max_states = 2;
    cfg.energy_bracket = {{10.0, 50.0}}; // N(10)=1, N(50)=3
    auto res = solve_bound_states_1d(box, g, u, cfg);
    REQUIRE(res.states.size() == 2);
    CHECK(res.states[0].nodes == 1);
    CHECK(res.states[1].nodes == 2);
    CHECK(res.states[0].E == doctest::Approx(oracle::box_energy(2, 1.0, u)).epsilon(1e-8));
    CHECK(res.states[1].E == doctest::Approx(oracle::box_energy(3, 1.0, u)).epsilon(1e-8));
}

TEST_CASE("solver output is invariant under seed rescaling (R -> cR)") {
    Units u;
    auto box = Potential1D::box(1.0);
    Grid1D g(0.0, 1.0, 801);
    ShootingConfig cfg;
    cfg.max_states = 3;
    auto base = solve_bound_states_1d(box, g, u, cfg);
    for (double c : {-3.0, 0.01, 7.0}) {
        ShootingConfig scaled = cfg;
        scaled.seed_scale = c;
        auto res = solve_bound_states_1d(box, g, u, scaled);
        REQUIRE(res.states.size() == base.states.size());
        for (std::size_t k = 0; k < res.states.size(); ++k) {
            CHECK(std::fabs(res.states[k].E - base.states[k].E) <=
                  1e-13 * std::fabs(base.states[k].E));
            for (int i = 0; i < g.n; i += 13)
                CHECK(res.states[k].R[i] == doctest::Approx(base.states[k].R[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("repeat runs are bit identical") {
    Units u;
    auto pot = Potential1D::harmonic(1.0, u);
    Grid1D g(-8.0, 8.0, 1001);
    ShootingConfig cfg;
    cfg.max_states = 3;
    auto a = solve_bound_states_1d(pot, g, u, cfg);
    auto b = solve_bound_states_1d(pot, g, u, cfg);
    REQUIRE(a.states.size() == b.states.size());
    for (std::size_t k = 0; k < a.states.size(); ++k) {
        CHECK(a.states[k].E == b.states[k].E);
        CHECK(a.states[k].R == b.states[k].R);
    }
}

TEST_CASE("input validation") {
    Units u;
    auto box = Potential1D::box(1.0);
    CHECK_THROWS_AS(solve_bound_states_1d(box, Grid1D(0.0, 0.9, 101), u, ShootingConfig{}),
                    std::invalid_argument);
    ShootingConfig bad;
    bad.max_states = 0;
    CHECK_THROWS_AS(solve_bound_states_1d(box, Grid1D(0.0, 1.0, 101), u, bad),
                    std::invalid_argument);
    Grid1D tiny(0.0, 1.0, 4);
    CHECK_THROWS_AS(solve_bound_states_1d(box, tiny, u, ShootingConfig{}),
                    std::invalid_argument);
}
