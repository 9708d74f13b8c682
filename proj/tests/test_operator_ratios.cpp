#include <doctest.h>

#include <cmath>
#include <numbers>

#include "central_solver.hpp"
#include "continuity.hpp"
#include "operator_ratios.hpp"
#include "oracles.hpp"

using namespace qnb;

namespace {

const SeparableCentralState& hydrogen_2p() {
    static const SeparableCentralState state = [] {
        Units u;
        return solve_central_state(CentralPotential::coulomb(1.0), 0, 1, 1,
                                   AzimuthalParity::cosine, RadialGrid(120.0, 12000),
                                   PolarGrid(801), u);
    }();
    return state;
}

} // namespace

TEST_CASE("hydrogen 2p rest state is an eigenstate of H, L^2 and Lz^2 but not Lz") {
    const auto& st = hydrogen_2p();
    OperatorRatioConfig cfg;
    cfg.n_phi = 64;
    const auto rep = operator_ratios(st, CentralPotential::coulomb(1.0), cfg);

    CHECK(std::fabs(rep.hamiltonian.real_mean - (-0.125)) < 1e-3);
    CHECK(rep.hamiltonian.real_std < 1e-3);
    CHECK(rep.hamiltonian.predicted_real == st.E());
    // psi is real at t = 0: every ratio comes out with a vanishing imaginary part
    CHECK(rep.hamiltonian.imag_max == 0.0);
    CHECK(rep.hamiltonian.imag_mean_abs == 0.0);

    CHECK(rep.l_squared.real_mean == doctest::Approx(2.0).epsilon(2e-3));
    CHECK(rep.l_squared.imag_max == 0.0);
    CHECK(rep.lz_squared.real_mean == doctest::Approx(1.0).epsilon(2e-3));
    CHECK(rep.lz_squared.real_std < 1e-9); // the azimuthal stencil ratio is one constant
    CHECK(rep.lz_squared.imag_max == 0.0);

    // m != 0 at rest: the Lz ratio is the varying -i hbar R'/R, not a constant
    CHECK_FALSE(rep.lz_constant);
    CHECK(rep.lz_predicted == 0.0);
    bool saw_variation = false;
    for (std::size_t k = 0; k < rep.lz_ratio.size(); ++k) {
        if (rep.lz_mask[k]) continue;
        CHECK(rep.lz_ratio[k].real() == 0.0);
        if (std::fabs(rep.lz_ratio[k].imag()) > 0.5) saw_variation = true;
    }
    CHECK(saw_variation);

    // tolerance spacing: the largest spacing among the differenced axes
    const double hp = 2.0 * std::numbers::pi / 64;
    CHECK(rep.hamiltonian.spacing == doctest::Approx(hp).epsilon(1e-12));
    CHECK(rep.l_squared.spacing == doctest::Approx(hp).epsilon(1e-12));
    CHECK(rep.lz_squared.spacing == doctest::Approx(hp).epsilon(1e-12));
    CHECK(rep.hamiltonian.samples > 0);
}

TEST_CASE("circulating state: Lz ratio locks onto the constant alpha_phi") {
    Units u;
    const auto& rest = hydrogen_2p();
    const auto circ =
        assemble_state(rest.radial, rest.polar, circulating_azimuthal(u.hbar, u));
    OperatorRatioConfig cfg;
    cfg.n_phi = 64;
    const auto rep = operator_ratios(circ, CentralPotential::coulomb(1.0), cfg);

    const double hp = 2.0 * std::numbers::pi / cfg.n_phi;
    CHECK(rep.lz_constant);
    CHECK(rep.lz_predicted == u.hbar);
    for (std::size_t k = 0; k < rep.lz_ratio.size(); ++k) {
        REQUIRE_FALSE(rep.lz_mask[k]); // constant amplitude: no nodes anywhere
        // central difference of e^{i phi} gives sin(h)/h exactly
        CHECK(rep.lz_ratio[k].real() == doctest::Approx(std::sin(hp) / hp).epsilon(1e-12));
        CHECK(std::fabs(rep.lz_ratio[k].imag()) < 1e-13);
    }

    CHECK(std::fabs(rep.hamiltonian.real_mean - (-0.125)) < 1e-3);
    CHECK(rep.hamiltonian.imag_mean_abs < 1e-8);
    CHECK(rep.lz_squared.real_mean == doctest::Approx(1.0).epsilon(2e-3));
    CHECK(rep.l_squared.imag_mean_abs < 1e-8);
}

TEST_CASE("mismatched factors are exposed by a non-constant H ratio") {
    Units u;
    const auto s1 = solve_central_state(CentralPotential::coulomb(1.0), 0, 0, 0,
                                        AzimuthalParity::cosine, RadialGrid(40.0, 4000),
                                        PolarGrid(801), u);
    const auto polar_p = solve_polar(0, 1, PolarGrid(801), u);
    REQUIRE(polar_p.size() == 2);
    REQUIRE(polar_p[1].l == 1);

    // 1s radial factor glued to an l = 1 polar factor: no such eigenstate exists
    const SeparableCentralState impostor{s1.radial, polar_p[1], s1.azimuthal, u};
    const auto rep = operator_ratios(impostor, CentralPotential::coulomb(1.0));

    CHECK(rep.hamiltonian.real_std > 0.1);
    CHECK(rep.hamiltonian.real_max_dev > 1.0);
    CHECK(std::fabs(rep.hamiltonian.real_mean - impostor.E()) > 0.1);

    // the honest factors still satisfy their own identities
    CHECK(rep.l_squared.real_mean == doctest::Approx(2.0).epsilon(5e-2));
}

TEST_CASE("amplitude rescaling leaves every ratio statistic unchanged") {
    const auto& st = hydrogen_2p();
    OperatorRatioConfig cfg;
    cfg.n_phi = 32;
    const auto base = operator_ratios(st, CentralPotential::coulomb(1.0), cfg);

    for (double c : {-3.0, 0.01, 7.0}) {
        auto scaled = st;
        for (double& v : scaled.radial.R) v *= c;
        for (double& v : scaled.polar.R) v *= c;
        const auto rep = operator_ratios(scaled, CentralPotential::coulomb(1.0), cfg);
        CHECK(rep.hamiltonian.real_mean ==
              doctest::Approx(base.hamiltonian.real_mean).epsilon(1e-12));
        CHECK(rep.l_squared.real_mean ==
              doctest::Approx(base.l_squared.real_mean).epsilon(1e-12));
        CHECK(rep.lz_squared.real_mean ==
              doctest::Approx(base.lz_squared.real_mean).epsilon(1e-12));
        CHECK(rep.hamiltonian.real_std ==
              doctest::Approx(base.hamiltonian.real_std).epsilon(1e-6));
        CHECK(rep.hamiltonian.samples == base.hamiltonian.samples);
    }
}

TEST_CASE("degenerate and malformed ratio inputs are rejected") {
    Units u;
    auto dead = hydrogen_2p();
    for (double& v : dead.radial.R) v = 0.0;
    CHECK_THROWS_AS((void)operator_ratios(dead, CentralPotential::coulomb(1.0)),
                    DiagnosticsError);

    OperatorRatioConfig cfg;
    cfg.n_phi = 2;
    CHECK_THROWS_AS((void)operator_ratios(hydrogen_2p(), CentralPotential::coulomb(1.0), cfg),
                    std::invalid_argument);
}

TEST_CASE("continuity constants feed the predicted imaginary offsets") {
    OperatorRatioConfig cfg;
    cfg.c_theta = 5.0;
    cfg.c_phi = 2.0;
    const auto rep = operator_ratios(hydrogen_2p(), CentralPotential::coulomb(1.0), cfg);
    CHECK(rep.l_squared.predicted_imag == -5.0);
    CHECK(rep.lz_squared.predicted_imag == -2.0);
    CHECK(rep.hamiltonian.predicted_imag == 0.0);
}
