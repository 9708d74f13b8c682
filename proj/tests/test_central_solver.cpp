#include <doctest.h>

#include <cmath>
#include <numbers>

#include "central_solver.hpp"
#include "field.hpp"
#include "oracles.hpp"

using namespace qnb;
using std::numbers::pi;

TEST_CASE("azimuthal factor: trig forms, alpha_phi = m*hbar") {
    Units u;
    auto a0 = solve_azimuthal(0, AzimuthalParity::cosine, u);
    CHECK(a0.alpha_phi == 0.0);
    CHECK(a0.q_phi == 0.0);
    CHECK(a0.R(1.2345) == 1.0);
    CHECK(a0.mode == AzimuthalMode::rest);

    auto a2 = solve_azimuthal(2, AzimuthalParity::cosine, u);
    CHECK(a2.alpha_phi == 2.0);
    CHECK(a2.q_phi == doctest::Approx(2.0)); // (2 hbar)^2 / (2 mass)
    CHECK(a2.R(0.7) == doctest::Approx(std::cos(1.4)));
    CHECK(a2.d2R(0.7) == doctest::Approx(-4.0 * std::cos(1.4)));

    auto s1 = solve_azimuthal(1, AzimuthalParity::sine, u);
    CHECK(s1.alpha_phi == 1.0);
    CHECK(s1.R(0.7) == doctest::Approx(std::sin(0.7)));

    Units u2{2.0, 4.0};
    auto b = solve_azimuthal(3, AzimuthalParity::cosine, u2);
    CHECK(b.alpha_phi == 6.0);               // 3 * hbar
    CHECK(b.q_phi == doctest::Approx(4.5));  // 36 / (2*4)

    CHECK_THROWS_AS(solve_azimuthal(-1, AzimuthalParity::cosine, u), std::invalid_argument);
    CHECK_THROWS_AS(solve_azimuthal(0, AzimuthalParity::sine, u), std::invalid_argument);
    CHECK_THROWS_AS(solve_azimuthal(2, AzimuthalParity::constant, u), std::invalid_argument);
}

TEST_CASE("circulating branch keeps alpha_phi free and flat amplitude") {
    Units u;
    auto c = circulating_azimuthal(1.5, u);
    CHECK(c.mode == AzimuthalMode::circulating);
    CHECK(c.alpha_phi == 1.5);
    CHECK(c.q_phi == 0.0);
    CHECK(c.R(2.0) == 1.0);
    CHECK(c.dR(2.0) == 0.0);
}

TEST_CASE("polar constants reproduce l(l+1)*hbar^2 for l <= 5, all m") {
    Units u;
    PolarGrid g(2001);
    for (int m = 0; m <= 5; ++m) {
        auto sols = solve_polar(m, 5, g, u);
        REQUIRE(sols.size() == static_cast<std::size_t>(6 - m));
        for (const auto& s : sols) {
            const double want = s.l * (s.l + 1.0);
            if (want == 0.0)
                CHECK(std::fabs(s.alpha_theta_sq) < 1e-8);
            else
                CHECK(s.alpha_theta_sq == doctest::Approx(want).epsilon(1e-8));
            CHECK(s.m == m);
        }
    }
}

TEST_CASE("polar constants scale with hbar^2") {
    Units u{2.0, 3.0};
    PolarGrid g(1501);
    auto sols = solve_polar(1, 3, g, u);
    for (const auto& s : sols)
        CHECK(s.alpha_theta_sq == doctest::Approx(s.l * (s.l + 1.0) * 4.0).epsilon(1e-8));
}

TEST_CASE("polar amplitudes match the closed forms") {
    Units u;
    PolarGrid g(1201);
    const double h = g.spacing();

    auto p10 = solve_polar(0, 1, g, u)[1]; // l=1, m=0: cos(theta)
    for (int i = 0; i < g.n; i += 17) {
        const double want = std::sqrt(1.5) * std::cos(g.theta(i));
        CHECK(std::fabs(p10.R[i] - want) < 1e-6);
    }
    // odd in cos(theta): the sin-weighted integral cancels to rounding noise
    std::vector<double> w(g.n);
    for (int i = 0; i < g.n; ++i) w[i] = std::sin(g.theta(i));
    CHECK(std::fabs(trapezoid_weighted(std::vector<double>(p10.R.begin(), p10.R.end()), w, h)) <
          1e-9);

    auto p11 = solve_polar(1, 1, g, u)[0]; // l=1, m=1: sin(theta)
    for (int i = 0; i < g.n; i += 17) {
        const double want = std::sqrt(0.75) * std::sin(g.theta(i));
        CHECK(std::fabs(p11.R[i] - want) < 1e-6);
    }

    auto p20 = solve_polar(0, 2, g, u)[2]; // l=2, m=0: (3cos^2-1)/2
    for (int i = 0; i < g.n; i += 17) {
        const double c = std::cos(g.theta(i));
        const double want = std::sqrt(2.5) * 0.5 * (3.0 * c * c - 1.0);
        CHECK(std::fabs(p20.R[i] - want) < 1e-6);
    }
}

TEST_CASE("polar amplitude agrees with the Legendre recurrence oracle") {
    Units u;
    PolarGrid g(1201);
    auto sol = solve_polar(2, 3, g, u)[1]; // l=3, m=2
    std::vector<double> want(g.n), sinv(g.n);
    for (int i = 0; i < g.n; ++i) {
        want[i] = oracle::assoc_legendre(3, 2, std::cos(g.theta(i)));
        sinv[i] = std::sin(g.theta(i));
    }
    want = normalize_weighted(want, sinv, g.spacing());
    // align overall sign at the largest oracle sample
    int j = 0;
    for (int i = 0; i < g.n; ++i)
        if (std::fabs(want[i]) > std::fabs(want[j])) j = i;
    const double s = (want[j] * sol.R[j] >= 0.0) ? 1.0 : -1.0;
    for (int i = 0; i < g.n; i += 11) CHECK(std::fabs(sol.R[i] - s * want[i]) < 2e-6);
}

TEST_CASE("polar factor is parity definite about the equator") {
    Units u;
    PolarGrid g(1001);
    for (auto [l, m] : {std::pair{2, 1}, std::pair{3, 0}, std::pair{4, 2}}) {
        auto sol = solve_polar(m, l, g, u)[l - m];
        const double sign = ((l - m) % 2 == 0) ? 1.0 : -1.0;
        for (int i = 0; i < g.n; ++i)
            CHECK(std::fabs(sol.R[i] - sign * sol.R[g.n - 1 - i]) < 1e-6);
    }
}

TEST_CASE("hydrogen radial levels: -1/(2 n^2) at l = 0 and l = 1") {
    Units u;
    auto pot = CentralPotential::coulomb(1.0);
    RadialGrid g(coulomb_r_max(3, 1.0, u), 36000); // r_max = 360, h = 0.01
    ShootingConfig cfg;
    cfg.max_states = 3;
    auto res = solve_radial(pot, 0.0, g, u, cfg);
    REQUIRE(res.states.size() == 3);
    CHECK(res.complete);
    for (int k = 0; k < 3; ++k) {
        CHECK(res.states[k].E ==
              doctest::Approx(oracle::coulomb_energy(k + 1, 1.0, u)).epsilon(1e-5));
        CHECK(res.states[k].nodes == k);
    }
    // ground amplitude is 2 e^{-r} in these units
    const auto& R10 = res.states[0].R;
    for (int i = 0; i < 2000; i += 97) {
        const double r = g.r(i);
        CHECK(std::fabs(R10[i] - 2.0 * std::exp(-r)) < 1e-4);
    }

    ShootingConfig cfg1;
    cfg1.max_states = 2;
    auto res1 = solve_radial(pot, 2.0, g, u, cfg1); // l = 1
    REQUIRE(res1.states.size() == 2);
    CHECK(res1.states[0].E == doctest::Approx(-0.125).epsilon(1e-5));
    CHECK(res1.states[0].nodes == 0);
    CHECK(res1.states[1].E == doctest::Approx(oracle::coulomb_energy(3, 1.0, u)).epsilon(1e-5));
}

TEST_CASE("hydrogen degeneracy: E depends on n_r + l + 1 only") {
    Units u;
    auto pot = CentralPotential::coulomb(1.0);
    RadialGrid g(coulomb_r_max(4, 1.0, u), 64000);
    const int n = 4;
    for (int l = 0; l < n; ++l) {
        ShootingConfig cfg;
        cfg.max_states = n - l;
        auto res = solve_radial(pot, l * (l + 1.0), g, u, cfg);
        REQUIRE(static_cast<int>(res.states.size()) == n - l);
        CHECK(res.states[n - l - 1].E ==
              doctest::Approx(oracle::coulomb_energy(n, 1.0, u)).epsilon(1e-5));
    }
}

TEST_CASE("isotropic harmonic radial levels: (2 n_r + l + 3/2) hbar omega") {
    Units u;
    auto pot = CentralPotential::harmonic3d(1.0, u);
    RadialGrid g(9.0, 3000);
    for (int l : {0, 1}) {
        ShootingConfig cfg;
        cfg.max_states = 2;
        auto res = solve_radial(pot, l * (l + 1.0), g, u, cfg);
        REQUIRE(res.states.size() == 2);
        for (int k = 0; k < 2; ++k)
            CHECK(res.states[k].E ==
                  doctest::Approx(oracle::harmonic3d_energy(k, l, 1.0, u)).epsilon(1e-6));
    }
}

TEST_CASE("radial solve is invariant under seed rescaling") {
    Units u;
    auto pot = CentralPotential::coulomb(1.0);
    RadialGrid g(80.0, 8000);
    ShootingConfig cfg;
    cfg.max_states = 2;
    auto base = solve_radial(pot, 0.0, g, u, cfg);
    for (double c : {-3.0, 0.01, 7.0}) {
        ShootingConfig scaled = cfg;
        scaled.seed_scale = c;
        auto res = solve_radial(pot, 0.0, g, u, scaled);
        REQUIRE(res.states.size() == base.states.size());
        for (std::size_t k = 0; k < res.states.size(); ++k) {
            CHECK(std::fabs(res.states[k].E - base.states[k].E) <=
                  1e-13 * std::fabs(base.states[k].E));
            for (int i = 0; i < g.n; i += 131)
                CHECK(res.states[k].R[i] ==
                      doctest::Approx(base.states[k].R[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("assembled state carries the three constants coherently") {
    Units u;
    auto pot = CentralPotential::coulomb(1.0);
    RadialGrid rg(coulomb_r_max(2, 1.0, u), 16000);
    PolarGrid pg(801);
    auto st = solve_central_state(pot, 0, 1, 1, AzimuthalParity::cosine, rg, pg, u);
    CHECK(st.E() == doctest::Approx(-0.125).epsilon(1e-5));
    CHECK(st.alpha_theta_sq() == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(st.alpha_phi() == 1.0);
    CHECK(st.l() == 1);
    CHECK(st.m() == 1);
    CHECK(st.principal_n() == 2);
    CHECK(st.mode() == AzimuthalMode::rest);

    auto sin_state = solve_central_state(pot, 0, 1, 1, AzimuthalParity::sine, rg, pg, u);
    CHECK(sin_state.E() == doctest::Approx(st.E()));
    CHECK(sin_state.alpha_phi() == st.alpha_phi());
    CHECK(sin_state.azimuthal.parity == AzimuthalParity::sine);
}

TEST_CASE("assembly consistency errors") {
    Units u;
    auto pot = CentralPotential::coulomb(1.0);
    RadialGrid rg(80.0, 4000);
    PolarGrid pg(501);
    auto az1 = solve_azimuthal(1, AzimuthalParity::cosine, u);
    auto pols = solve_polar(1, 2, pg, u);
    ShootingConfig cfg;
    auto rad = solve_radial(pot, pols[0].alpha_theta_sq, rg, u, cfg);
    REQUIRE(!rad.states.empty());

    // radial factor solved with l=1 cannot pair with the l=2 polar factor
    CHECK_THROWS_AS(assemble_state(rad.states[0], pols[1], az1), std::invalid_argument);
    // polar m and azimuthal m must agree
    auto az0 = solve_azimuthal(0, AzimuthalParity::cosine, u);
    CHECK_THROWS_AS(assemble_state(rad.states[0], pols[0], az0), std::invalid_argument);
    // circulating alpha_phi must be the polar m in hbar units
    auto good = circulating_azimuthal(1.0, u);
    CHECK_NOTHROW(assemble_state(rad.states[0], pols[0], good));
    auto bad = circulating_azimuthal(1.5, u);
    CHECK_THROWS_AS(assemble_state(rad.states[0], pols[0], bad), std::invalid_argument);
    // mismatched unit systems cannot be mixed
    auto az_u2 = solve_azimuthal(1, AzimuthalParity::cosine, Units{2.0, 1.0});
    CHECK_THROWS_AS(assemble_state(rad.states[0], pols[0], az_u2), std::invalid_argument);
}

TEST_CASE("radial input validation") {
    Units u;
    auto pot = CentralPotential::coulomb(1.0);
    RadialGrid g(10.0, 100);
    ShootingConfig cfg;
    CHECK_THROWS_AS(solve_radial(pot, -1.0, g, u, cfg), std::invalid_argument);
    cfg.max_states = 0;
    CHECK_THROWS_AS(solve_radial(pot, 0.0, g, u, cfg), std::invalid_argument);
    CHECK_THROWS_AS(coulomb_r_max(0, 1.0, u), std::invalid_argument);
    CHECK(coulomb_r_max(3, 1.0, u) == doctest::Approx(360.0));
    CHECK(coulomb_r_max(1, 2.0, Units{1.0, 1.0}) == doctest::Approx(20.0));
}

TEST_CASE("polar solve repeats bit identically") {
    Units u;
    PolarGrid g(901);
    auto a = solve_polar(1, 3, g, u);
    auto b = solve_polar(1, 3, g, u);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].alpha_theta_sq == b[k].alpha_theta_sq);
        CHECK(a[k].R == b[k].R);
    }
}
