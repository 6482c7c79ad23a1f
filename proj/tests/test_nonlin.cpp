#include <doctest.h>

#include "twave/nonlin.hpp"

#include <cmath>
#include <numbers>

using namespace twave;

TEST_CASE("force values at reference points")
{
    const auto mk = Nonlinearity::mckean(0.3);
    CHECK(evalForce(mk, 0.0) == doctest::Approx(0.0));
    CHECK(evalForce(mk, 1.0) == doctest::Approx(0.0));
    CHECK(evalForce(Nonlinearity::sine(), std::numbers::pi / 2) == doctest::Approx(-1.0));
    CHECK(evalForce(Nonlinearity::sawtooth(), 0.5) == doctest::Approx(0.5));
    CHECK(evalDerivatives(Nonlinearity::sine(), 0.0, 1) == doctest::Approx(1.0));
    CHECK(evalDerivatives(Nonlinearity::sine(), 0.0, 2) == doctest::Approx(0.0));
    CHECK(evalDerivatives(Nonlinearity::appendix(), 0.0, 1) == doctest::Approx(-1.0));
}

TEST_CASE("two-harmonic force is sin u + 0.4 cos 2u")
{
    const auto ap = Nonlinearity::appendix();
    for (double u = -4.0; u <= 4.0; u += 0.37) CHECK(evalForce(ap, u) == doctest::Approx(std::sin(u) + 0.4 * std::cos(2 * u)));
}

TEST_CASE("smooth derivatives agree with central differences")
{
    const double h = 1e-4;
    for (const auto& nl : {Nonlinearity::sine(), Nonlinearity::appendix()}) {
        for (double u = -3.0; u <= 3.0; u += 0.25) {
            for (int k = 1; k <= 4; ++k) {
                const double fd = (nl.derivative(u + h, k - 1) - nl.derivative(u - h, k - 1)) / (2 * h);
                const double ex = nl.derivative(u, k);
                CHECK(std::abs(fd - ex) <= 1e-6 * std::max(1.0, std::abs(ex)));
            }
        }
    }
}

TEST_CASE("potential is an antiderivative of V' with V(0) = 0")
{
    for (const auto& nl : {Nonlinearity::sine(), Nonlinearity::appendix(), Nonlinearity::sawtooth(), Nonlinearity::mckean(0.5)}) {
        CHECK(nl.potential(0.0) == doctest::Approx(0.0));
        const double h = 1e-5;
        for (double u : {-1.7, -0.6, 0.2, 0.8, 1.9}) {
            if (nl.kind() == NlKind::McKean && std::abs(u - 0.5) < 0.01) continue;
            const double fd = (nl.potential(u + h) - nl.potential(u - h)) / (2 * h);
            CHECK(fd == doctest::Approx(nl.dV(u)).epsilon(1e-6));
        }
    }
}

TEST_CASE("sawtooth is continuous at the breakpoints and rejects escapes")
{
    const auto sw = Nonlinearity::sawtooth();
    for (double b : {-1.0, 1.0}) {
        CHECK(evalForce(sw, std::nextafter(b, -5.0)) == doctest::Approx(evalForce(sw, std::nextafter(b, 5.0))).epsilon(1e-14));
    }
    CHECK(evalForce(sw, 1.5) == doctest::Approx(0.5));
    CHECK(evalForce(sw, -1.5) == doctest::Approx(-0.5));
    CHECK_THROWS_AS(sw.dV(2.0), DomainError);
    CHECK_THROWS_AS(sw.dV(-2.5), DomainError);
}

TEST_CASE("McKean force jumps by one at the threshold")
{
    const auto mk = Nonlinearity::mckean(0.4);
    const double below = evalForce(mk, std::nextafter(0.4, 0.0));
    const double above = evalForce(mk, 0.4);
    CHECK(above - below == doctest::Approx(1.0));
    CHECK(mk.dV(0.4) == doctest::Approx(0.4 - 1.0)); // h(0) = 1
    CHECK_FALSE(mk.smooth());
}

TEST_CASE("custom family and name lookup")
{
    CustomFamily fam;
    fam.V = [](double u) { return u * u * u * u / 4; };
    fam.dV = {[](double u) { return u * u * u; }, [](double u) { return 3 * u * u; }, [](double u) { return 6 * u; },
              [](double) { return 6.0; }, [](double) { return 0.0; }};
    const auto cu = Nonlinearity::custom(fam, "quartic");
    CHECK(cu.smooth());
    CHECK(cu.name() == "quartic");
    CHECK(evalDerivatives(cu, 2.0, 2) == doctest::Approx(12.0));
    CHECK(nonlinearityFromName("sine").kind() == NlKind::Sine);
    CHECK(nonlinearityFromName("mckean", 0.2).a() == doctest::Approx(0.2));
    CHECK_THROWS(nonlinearityFromName("cubic"));
}
