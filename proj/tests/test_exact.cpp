#include <doctest.h>

#include "twave/exact.hpp"

#include <cmath>
#include <numbers>

using namespace twave;

TEST_CASE("reduced Hamiltonian")
{
    const auto s = Nonlinearity::sine();
    CHECK(reducedHamiltonian(s, 0.0, {0.0, 0.0}) == doctest::Approx(0.0));
    CHECK(reducedHamiltonian(s, 0.0, {std::numbers::pi, 0.0}) == doctest::Approx(2.0));
    CHECK(reducedHamiltonian(s, 1.3, {0.4, 0.7}) == doctest::Approx(reducedHamiltonian(s, 1.3, {0.4, -0.7})));
}

TEST_CASE("McKean front: limits, midpoint, monotone, residual")
{
    CHECK(mckeanFront(0.1, 0.0, 60.0) == doctest::Approx(1.0));
    CHECK(mckeanFront(0.1, 0.0, -60.0) == doctest::Approx(0.0));
    for (double c : {0.0, 0.3, 0.9}) CHECK(mckeanFront(c, 1.5, 1.5) == 0.5);
    double prev = -1.0;
    for (int k = 0; k < 10000; ++k) {
        const double v = mckeanFront(0.6, 0.0, -20.0 + 40.0 * k / 9999.0);
        CHECK(v >= prev);
        prev = v;
    }
    // (c^2-1) phi'' = -V'(phi) = -(phi - h(phi - 1/2)) with phi'' from the closed form
    const double c = 0.1, s = std::sqrt(1 - c * c);
    const auto mk = Nonlinearity::mckean(0.5);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double xi = -10.0 + 20.0 * (k + 0.5) / 1000.0;
        const double phi = mckeanFront(c, 0.0, xi);
        const double d2 = xi > 0 ? -0.5 * std::exp(-xi / s) / (s * s) : 0.5 * std::exp(xi / s) / (s * s);
        worst = std::max(worst, std::abs((c * c - 1) * d2 + mk.dV(phi)));
    }
    CHECK(worst <= 1e-10);
    CHECK_THROWS(mckeanFront(1.0, 0.0, 0.0));
}

TEST_CASE("McKean fixed points are saddles for subsonic speeds")
{
    const auto mk = Nonlinearity::mckean(0.5);
    for (double c : {0.0, 0.5, 0.9}) {
        CHECK(classifyFixedPoint(mk, c, 0.0).type == FixedPointType::Saddle);
        CHECK(classifyFixedPoint(mk, c, 1.0).type == FixedPointType::Saddle);
        CHECK(classifyFixedPoint(mk, c, 0.0).lambdaSquared > 0.0);
    }
    CHECK(classifyFixedPoint(Nonlinearity::sine(), 1.3, 0.0).type == FixedPointType::Center);
}

TEST_CASE("sawtooth piecewise wave")
{
    const double c = 0.5, tau = 10.0;
    const auto w = sawtoothPeriodicWave(c, tau);
    const auto nl = Nonlinearity::sawtooth();
    CHECK(w.value(0.0) == doctest::Approx(0.0));
    CHECK(w.value(w.xiStar) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(w.value(tau)) < 1e-12);
    CHECK(w.value(tau + w.xiStar) == doctest::Approx(-1.0));

    const double e = 1e-9;
    for (double j : w.junctions()) {
        CHECK(std::abs(w.value(j - e) - w.value(j + e)) < 1e-8);
        CHECK(std::abs(w.derivative(j - e, 1) - w.derivative(j + e, 1)) < 1e-7);
    }
    for (int k = 1; k < 200; ++k) {
        const double xi = tau * k / 400.0;
        CHECK(w.value(tau - xi) == doctest::Approx(w.value(xi)).epsilon(1e-8));
    }
    double worst = 0.0;
    for (int k = 0; k < 2000; ++k) {
        const double xi = 2 * tau * (k + 0.37) / 2000.0;
        bool nearJunction = false;
        for (double j : w.junctions()) nearJunction = nearJunction || std::abs(xi - j) < 1e-6;
        if (nearJunction) continue;
        worst = std::max(worst, std::abs((c * c - 1) * w.derivative(xi, 2) + nl.dV(w.value(xi))));
    }
    CHECK(worst <= 1e-8);
    CHECK_THROWS(sawtoothPeriodicWave(0.5, 1.0)); // period too short for a C1 wave
}

TEST_CASE("pendulum orbit")
{
    const double c = 1.3;
    const double T0 = 2 * std::numbers::pi * std::sqrt(c * c - 1); // linear period about 0
    const auto small = pendulumOrbit(c, T0 * 1.0001);
    CHECK(small.amplitude() < 0.05);
    CHECK(small.center == 0.0);

    const double T = 2 * std::numbers::pi;
    const auto o = pendulumOrbit(c, T);
    CHECK(o.value(T) == doctest::Approx(o.value(0.0)).epsilon(1e-12));
    const auto s = Nonlinearity::sine();
    const double H0 = reducedHamiltonian(s, c, {o.value(0.0), (c * c - 1) * o.velocity(0.0)});
    double drift = 0.0, res = 0.0;
    const double h = 1e-3;
    for (int k = 0; k < 500; ++k) {
        const double xi = T * k / 500.0;
        const double H = reducedHamiltonian(s, c, {o.value(xi), (c * c - 1) * o.velocity(xi)});
        drift = std::max(drift, std::abs(H - H0));
        const double d2 = (o.value(xi + h) - 2 * o.value(xi) + o.value(xi - h)) / (h * h);
        res = std::max(res, std::abs((c * c - 1) * d2 + std::sin(o.value(xi))));
        CHECK((o.value(xi + 1e-6) - o.value(xi - 1e-6)) / 2e-6 == doctest::Approx(o.velocity(xi)).epsilon(1e-6));
    }
    CHECK(drift <= 1e-10 * std::max(1.0, std::abs(H0)));
    CHECK(res <= 1e-5);

    const auto w = pendulumPeriodicWave(c, T, 64);
    for (int n = -64; n <= 64; ++n) CHECK(std::abs(w[n].imag()) <= 1e-10);
    for (double xi : {0.3, 2.0, 5.5}) CHECK(evaluate(w, xi) == doctest::Approx(o.value(xi)).epsilon(1e-10));

    const auto sub = pendulumOrbit(0.5, 8.0);
    CHECK(sub.center == doctest::Approx(std::numbers::pi));
    CHECK_THROWS(pendulumOrbit(c, 0.9 * T0));
}
