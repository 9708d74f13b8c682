#include <doctest.h>

#include <cmath>
#include <numbers>

#include "field.hpp"
#include "grid.hpp"
#include "oracles.hpp"
#include "potential.hpp"
#include "units.hpp"

using namespace qnb;
using std::numbers::pi;

TEST_CASE("grids: spacing and openness") {
    Grid1D g(0.0, 1.0, 11);
    CHECK(g.spacing() == doctest::Approx(0.1));
    CHECK(g.x(0) == 0.0);
    CHECK(g.x(10) == doctest::Approx(1.0));

    RadialGrid rg(5.0, 10);
    CHECK(rg.spacing() == doctest::Approx(0.5));
    CHECK(rg.r(0) == doctest::Approx(0.5));   // open at the origin
    CHECK(rg.r(9) == doctest::Approx(5.0));   // closed at r_max

    PolarGrid pg(9);
    CHECK(pg.spacing() == doctest::Approx(pi / 10));
    CHECK(pg.theta(0) > 0.0);
    CHECK(pg.theta(8) < pi);

    PhiLoop loop(8);
    CHECK(loop.phi(0) == 0.0);
    CHECK(loop.phi(7) == doctest::Approx(2.0 * pi * 7 / 8));

    CHECK_THROWS_AS(Grid1D(0.0, 1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(Grid1D(1.0, 0.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(RadialGrid(-1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(PolarGrid(2), std::invalid_argument);
}

TEST_CASE("trapezoid: exact on linear data") {
    std::vector<double> f = {0.0, 0.5, 1.0, 1.5, 2.0};
    CHECK(trapezoid(f, 0.25) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("normalize: -sin(pi x) becomes sqrt(2) sin(pi x)") {
    Grid1D g(0.0, 1.0, 201);
    std::vector<double> R(g.n);
    for (int i = 0; i < g.n; ++i) R[i] = -std::sin(pi * g.x(i));
    auto out = normalize(R, g.spacing());
    // int sin^2 = 1/2 over [0,1], so the normalized amplitude is sqrt(2);
    // the leading zero sample is skipped by the sign rule
    const double sqrt2 = 1.4142135623730951;
    for (int i = 0; i < g.n; ++i)
        CHECK(out[i] == doctest::Approx(sqrt2 * std::sin(pi * g.x(i))).epsilon(1e-9));

    std::vector<double> zeros(11, 0.0);
    CHECK_THROWS_AS(normalize(zeros, 0.1), std::domain_error);
}

TEST_CASE("derivative stencils: second order on smooth data") {
    Grid1D g(-1.0, 1.0, 401);
    std::vector<double> f(g.n);
    auto fn = [](double x) { return std::exp(-x * x); };
    for (int i = 0; i < g.n; ++i) f[i] = fn(g.x(i));
    auto d2 = second_derivative(f, g.spacing());
    for (int i : {0, 1, 150, 200, 399, 400}) {
        const double want = oracle::d2_richardson(fn, g.x(i), 1e-4);
        CHECK(d2[i] == doctest::Approx(want).epsilon(5e-4));
    }
    auto d1 = derivative(f, g.spacing());
    for (int i : {0, 200, 400}) {
        const double x = g.x(i);
        CHECK(d1[i] == doctest::Approx(-2.0 * x * fn(x)).epsilon(1e-4).scale(1.0));
    }
}

TEST_CASE("cubic interpolant reproduces cubics exactly") {
    CubicInterpolant c;
    c.x0 = 2.0;
    c.h = 0.25;
    auto fn = [](double x) { return 1.0 - 2.0 * x + 0.5 * x * x + 0.125 * x * x * x; };
    auto dfn = [](double x) { return -2.0 + x + 0.375 * x * x; };
    for (int i = 0; i < 12; ++i) c.f.push_back(fn(2.0 + 0.25 * i));
    for (double x : {2.0, 2.1, 3.3, 4.05, 4.75}) {
        CHECK(c.value(x) == doctest::Approx(fn(x)).epsilon(1e-12));
        CHECK(c.slope(x) == doctest::Approx(dfn(x)).epsilon(1e-10));
    }
}

TEST_CASE("1D potentials") {
    Units u;
    auto box = Potential1D::box(1.0);
    CHECK(box(0.5) == 0.0);
    CHECK(box.hard_walls());
    CHECK_THROWS_AS(box(1.5), std::domain_error);

    auto harm = Potential1D::harmonic(2.0, Units{1.0, 3.0});
    CHECK(harm(1.5) == doctest::Approx(0.5 * 3.0 * 4.0 * 2.25)); // m omega^2 x^2 / 2

    auto well = Potential1D::finite_well(50.0, 2.0);
    CHECK(well(0.0) == 0.0);
    CHECK(well(0.99) == 0.0);
    CHECK(well(1.01) == 50.0);
    CHECK(well(1.0) == 25.0); // step samples take the two-sided mean
    CHECK(well(-1.0) == 25.0);

    auto tab = Potential1D::tabulated({0.0, 1.0, 2.0}, {5.0, 7.0, 11.0});
    CHECK(tab(0.5) == doctest::Approx(6.0));
    CHECK(tab(1.5) == doctest::Approx(9.0));
    CHECK_THROWS_AS(tab(2.5), std::domain_error);
    CHECK_THROWS_AS(Potential1D::tabulated({0.0, 0.0}, {1.0, 2.0}), std::invalid_argument);

    Grid1D g(0.0, 1.0, 5);
    auto v = box.evaluate(g);
    for (double x : v) CHECK(x == 0.0);
}

TEST_CASE("central potentials") {
    auto coul = CentralPotential::coulomb(2.0);
    CHECK(coul(4.0) == doctest::Approx(-0.5));
    CHECK_THROWS_AS(coul(0.0), std::domain_error);

    auto h3 = CentralPotential::harmonic3d(1.0, Units{});
    CHECK(h3(2.0) == doctest::Approx(2.0));

    auto tab = CentralPotential::tabulated({1.0, 2.0}, {-1.0, -0.5});
    CHECK(tab(1.5) == doctest::Approx(-0.75));
    CHECK_THROWS_AS(CentralPotential::tabulated({0.0, 1.0}, {1.0, 1.0}),
                    std::invalid_argument); // r must start positive
}

TEST_CASE("units validation") {
    CHECK_THROWS_AS((Units{-1.0, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS(Potential1D::harmonic(1.0, Units{1.0, 0.0}), std::invalid_argument);
}
