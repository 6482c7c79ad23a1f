#include <doctest.h>

#include "twave/bea.hpp"
#include "twave/exact.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

using namespace twave;

namespace {

// G(t) = l(sqrt t)/(c^2-1), l the symbol of the DTWE operator; t < 0 uses cosh.
double symbolInT(double c, double sigma, double kappa, double t)
{
    auto cosq = [t](double h) { return t >= 0 ? std::cos(h * std::sqrt(t)) : std::cosh(h * std::sqrt(-t)); };
    const double l = (2 * c * c / (kappa * kappa)) * (cosq(kappa) - 1) - (2 / (sigma * sigma)) * (cosq(sigma) - 1);
    return l / (c * c - 1);
}

// Taylor coefficients of G at t = 0 by least squares on Chebyshev nodes.
Eigen::VectorXd seriesOf(double c, double sigma, double kappa)
{
    const int deg = 12, nodes = 60;
    const double r = 0.3;
    Eigen::MatrixXd A(nodes, deg + 1);
    Eigen::VectorXd b(nodes);
    for (int i = 0; i < nodes; ++i) {
        const double t = r * std::cos(std::numbers::pi * (i + 0.5) / nodes);
        for (int k = 0; k <= deg; ++k) A(i, k) = std::pow(t / r, k);
        b(i) = symbolInT(c, sigma, kappa, t);
    }
    Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
    for (int k = 0; k <= deg; ++k) x(k) /= std::pow(r, k);
    return x;
}

Nonlinearity linearForce(double lambda, double c)
{
    // f = lambda y  <=>  V' = -(c^2 - 1) lambda y
    const double k = -(c * c - 1) * lambda;
    CustomFamily fam;
    fam.V = [k](double y) { return 0.5 * k * y * y; };
    fam.dV = {[k](double y) { return k * y; }, [k](double) { return k; }, [](double) { return 0.0; },
              [](double) { return 0.0; }, [](double) { return 0.0; }};
    return Nonlinearity::custom(fam, "linear");
}

} // namespace

TEST_CASE("mu2 and mu4 match the series of the exact symbol")
{
    for (auto [c, s, k] : {std::array<double, 3>{1.3, 0.5, 0.5}, {1.3, 1.0, 0.7}, {0.5, 0.4, 0.2}, {2.0, 0.3, 0.6}}) {
        const auto g = seriesOf(c, s, k); // G = g0 + g1 t + g2 t^2 + g3 t^3
        CHECK(std::abs(g(0)) < 1e-12);
        CHECK(g(1) == doctest::Approx(-1.0).epsilon(1e-11));
        // -t = lambda + mu2 lambda^2 + (mu2^2 + mu4) lambda^3 with lambda = G(t)
        const double a = g(2), b = -g(3);
        CHECK(ModifiedEquation::mu2(c, s, k) == doctest::Approx(-a).epsilon(1e-10));
        CHECK(ModifiedEquation::mu4(c, s, k) == doctest::Approx(a * a - b).epsilon(1e-9));
    }
    CHECK(ModifiedEquation::mu2(1.3, 1.3 * 0.4, 0.4) == doctest::Approx(0.0));
    CHECK(ModifiedEquation::mu4(1.3, 0.2, 0.2) == doctest::Approx(std::pow(0.2, 4) / 240));
}

TEST_CASE("dispersion consistency is sixth order in s")
{
    const ModifiedEquation me(Nonlinearity::sine(), 1.3, 0.6, 0.45, Order::O6);
    CHECK(dispersionConsistency(me, 0.0).first == 0.0);
    CHECK(dispersionConsistency(me, 0.0).second == 0.0);
    std::vector<double> s, d;
    // below s ~ 1e-2 the O(s^8) difference drops under double resolution of O(s^2) values
    for (double x = 0.02; x <= 0.2; x *= 1.25) {
        const auto [a, b] = dispersionConsistency(me, x);
        s.push_back(x);
        d.push_back(std::abs(a - b));
    }
    CHECK(fittedSlope(s, d) >= 5.8);
}

TEST_CASE("linear force gives the geometric correction series")
{
    const double c = 1.3, lam = -0.7;
    const ModifiedEquation me(linearForce(lam, c), c, 0.5, 0.4, Order::O6);
    const double y = 0.37;
    CHECK(me.f3(y, 0.2) == doctest::Approx(me.mu2() * lam * lam * y));
    CHECK(me.f5(y, 0.2) == doctest::Approx((me.mu2() * me.mu2() + me.mu4()) * lam * lam * lam * y));
    CHECK(modifiedField(me, y, 0.2) == doctest::Approx(lam * y * (1 + me.mu2() * lam + (me.mu2() * me.mu2() + me.mu4()) * lam * lam)));
}

TEST_CASE("sine origin is a rest point of every order")
{
    for (Order o : {Order::O2, Order::O4, Order::O6})
        CHECK(modifiedField(ModifiedEquation(Nonlinearity::sine(), 1.3, 0.5, 0.5, o), 0.0, 0.0) == 0.0);
}

TEST_CASE("Hamiltonian form reproduces the modified field to sixth order")
{
    std::vector<double> hs, res;
    for (double h : {0.2, 0.1, 0.05}) {
        const ModifiedHamiltonianSystem sys(ModifiedEquation(Nonlinearity::sine(), 1.3, h, h, Order::O6));
        double worst = 0.0;
        for (auto [y, yd] : {std::array<double, 2>{0.4, 0.3}, {-1.1, 0.8}, {2.0, -0.5}}) {
            const double r = sys.secondDerivative(y, yd) - modifiedField(sys.equation(), y, yd);
            worst = std::max(worst, std::abs(r));
            const double p = sys.momentum(y, yd);
            CHECK(sys.field(y, p)[0] == doctest::Approx(yd).epsilon(1e-12));
        }
        hs.push_back(h);
        res.push_back(worst);
    }
    CHECK(fittedSlope(hs, res) >= 5.5);
}

TEST_CASE("O2 integration reproduces the pendulum wave")
{
    const double c = 1.3, T = 2 * std::numbers::pi;
    const auto o = pendulumOrbit(c, T);
    const ModifiedEquation me(Nonlinearity::sine(), c, 0.5, 0.5, Order::O2);
    const auto tr = integrateModified(me, o.value(0.0), o.velocity(0.0), T, 200);
    double worst = 0.0;
    for (std::size_t k = 0; k < tr.t.size(); ++k) worst = std::max(worst, std::abs(tr.y[k] - o.value(tr.t[k])));
    CHECK(worst <= 1e-8);
}

TEST_CASE("time reversal")
{
    const ModifiedEquation me(Nonlinearity::sine(), 1.3, 0.4, 0.4, Order::O6);
    const auto fwd = integrateModified(me, 0.9, 0.1, 5.0, 10);
    const auto back = integrateModified(me, fwd.y.back(), -fwd.ydot.back(), 5.0, 10);
    CHECK(back.y.back() == doctest::Approx(0.9).epsilon(1e-9));
    CHECK(-back.ydot.back() == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("modified energy drift shrinks at the next order")
{
    // O4 trajectory, energy of the O6 Hamiltonian system truncated after H3/K3
    std::vector<double> hs, drift;
    for (double h : {0.4, 0.2, 0.1}) {
        const ModifiedEquation me(Nonlinearity::sine(), 1.3, h, h, Order::O4);
        const ModifiedHamiltonianSystem sys(me);
        const auto tr = integrateModified(me, 1.2, 0.0, 2 * std::numbers::pi, 200);
        const double H0 = sys.Htilde(tr.y[0], sys.momentum(tr.y[0], tr.ydot[0]));
        double worst = 0.0;
        for (std::size_t k = 0; k < tr.t.size(); ++k)
            worst = std::max(worst, std::abs(sys.Htilde(tr.y[k], sys.momentum(tr.y[k], tr.ydot[k])) - H0));
        hs.push_back(h);
        drift.push_back(worst);
    }
    CHECK(fittedSlope(hs, drift) >= 3.5);
}

TEST_CASE("error ladder improves with each order")
{
    const auto lad = errorLadder(Nonlinearity::sine(), 1.3, 0.5, 0.5, 2 * std::numbers::pi, 64);
    REQUIRE(lad.discrete.converged);
    CHECK(lad.maxNorm[0] > lad.maxNorm[1]);
    CHECK(lad.maxNorm[1] > lad.maxNorm[2]);
}

TEST_CASE("fitted slope of exact power laws")
{
    const std::vector<double> x{0.1, 0.2, 0.4}, y{3e-3, 2.4e-2, 0.192};
    CHECK(fittedSlope(x, y) == doctest::Approx(3.0));
}
