#include "twave/exact.hpp"

#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace twave {

namespace {

void requireNonSonic(double c)
{
    if (std::abs(c * c - 1.0) < 1e-14)
        throw std::invalid_argument("c^2 = 1 is not allowed");
}

// V'' including the piecewise-linear kinds (one-sided slope away from breaks).
double curvature(const Nonlinearity& nl, double u)
{
    switch (nl.kind()) {
    case NlKind::McKean:
        return 1.0;
    case NlKind::Sawtooth:
        return std::abs(u) < 1.0 ? -1.0 : 1.0;
    default:
        return nl.derivative(u, 1);
    }
}

} // namespace

double reducedHamiltonian(const Nonlinearity& nl, double c, PhasePoint p)
{
    requireNonSonic(c);
    return 0.5 * p.psi * p.psi / (c * c - 1.0) + nl.potential(p.phi);
}

FixedPointInfo classifyFixedPoint(const Nonlinearity& nl, double c, double phi)
{
    requireNonSonic(c);
    FixedPointInfo info;
    info.lambdaSquared = -curvature(nl, phi) / (c * c - 1.0);
    if (info.lambdaSquared > 0.0) info.type = FixedPointType::Saddle;
    else if (info.lambdaSquared < 0.0) info.type = FixedPointType::Center;
    return info;
}

double mckeanFront(double c, double xiStar, double xi)
{
    if (!(std::abs(c) < 1.0))
        throw std::invalid_argument("mckeanFront requires |c| < 1");
    const double s = std::sqrt(1.0 - c * c);
    if (xi > xiStar) return 1.0 - 0.5 * std::exp(-(xi - xiStar) / s);
    if (xi < xiStar) return 0.5 * std::exp((xi - xiStar) / s);
    return 0.5;
}

double SawtoothPiecewiseWave::value(double xi) const
{
    const double T = 2.0 * tau;
    double x = std::fmod(xi, T);
    if (x < 0.0) x += T;
    const double xs = xiStar;
    if (x <= xs) return A * std::sin(omega * x);
    if (x < tau - xs) return 2.0 - B * std::cosh(omega * (x - 0.5 * tau));
    if (x <= tau + xs) return -A * std::sin(omega * (x - tau));
    if (x < T - xs) return -2.0 + B * std::cosh(omega * (x - 1.5 * tau));
    return A * std::sin(omega * (x - T));
}

double SawtoothPiecewiseWave::derivative(double xi, int order) const
{
    if (order != 1 && order != 2)
        throw std::invalid_argument("sawtooth derivative order must be 1 or 2");
    const double T = 2.0 * tau;
    double x = std::fmod(xi, T);
    if (x < 0.0) x += T;
    const double xs = xiStar, w = omega;
    auto trig = [&](double s, double amp) {
        return order == 1 ? amp * w * std::cos(w * s) : -amp * w * w * std::sin(w * s);
    };
    auto hyp = [&](double s, double amp) {
        return order == 1 ? amp * w * std::sinh(w * s) : amp * w * w * std::cosh(w * s);
    };
    if (x <= xs) return trig(x, A);
    if (x < tau - xs) return hyp(x - 0.5 * tau, -B);
    if (x <= tau + xs) return trig(x - tau, -A);
    if (x < T - xs) return hyp(x - 1.5 * tau, B);
    return trig(x - T, A);
}

std::array<double, 4> SawtoothPiecewiseWave::junctions() const
{
    return {xiStar, tau - xiStar, tau + xiStar, 2.0 * tau - xiStar};
}

SawtoothPiecewiseWave sawtoothPeriodicWave(double c, double tau)
{
    if (!(std::abs(c) < 1.0))
        throw std::invalid_argument("sawtoothPeriodicWave requires |c| < 1");
    if (!(tau > 0.0))
        throw std::invalid_argument("tau must be positive");
    SawtoothPiecewiseWave w;
    w.c = c;
    w.tau = tau;
    w.omega = 1.0 / std::sqrt(1.0 - c * c);
    const double hi = std::min(0.5 * tau, 0.5 * std::numbers::pi / w.omega);
    if (!(tau > std::numbers::pi / w.omega))
        throw std::domain_error("no admissible xi*: tau too small for C1 matching");
    // cot(w x) - tanh(w (tau/2 - x)), positive near 0, negative at hi
    auto F = [&](double x) {
        return std::cos(w.omega * x) / std::sin(w.omega * x) - std::tanh(w.omega * (0.5 * tau - x));
    };
    double lo = 1e-14 * hi, up = hi;
    if (!(F(lo) > 0.0 && F(up) <= 0.0))
        throw std::domain_error("no admissible xi*: root not bracketed");
    boost::math::tools::eps_tolerance<double> tol(52);
    std::uintmax_t it = 200;
    auto r = boost::math::tools::toms748_solve(F, lo, up, tol, it);
    w.xiStar = 0.5 * (r.first + r.second);
    w.A = 1.0 / std::sin(w.omega * w.xiStar);
    w.B = 1.0 / std::cosh(w.omega * (0.5 * tau - w.xiStar));
    return w;
}

double PendulumOrbit::amplitude() const
{
    return 2.0 * std::asin(modulus);
}

double PendulumOrbit::value(double xi) const
{
    const double K = boost::math::ellint_1(modulus);
    const double sn = boost::math::jacobi_sn(modulus, std::sqrt(beta) * xi + K);
    return center + 2.0 * std::asin(modulus * sn);
}

double PendulumOrbit::velocity(double xi) const
{
    const double K = boost::math::ellint_1(modulus);
    const double cn = boost::math::jacobi_cn(modulus, std::sqrt(beta) * xi + K);
    return 2.0 * modulus * std::sqrt(beta) * cn;
}

PendulumOrbit pendulumOrbit(double c, double T)
{
    requireNonSonic(c);
    PendulumOrbit o;
    o.c = c;
    o.T = T;
    o.beta = 1.0 / std::abs(c * c - 1.0);
    o.center = c * c > 1.0 ? 0.0 : std::numbers::pi;
    // period of the pendulum with modulus k is 4 K(k) / sqrt(beta)
    const double target = 0.25 * T * std::sqrt(o.beta);
    if (!(target > 0.5 * std::numbers::pi))
        throw std::domain_error("period at or below the linear limit 2 pi sqrt|c^2-1|");
    if (target > 18.0)
        throw std::domain_error("period too close to the separatrix for double precision");
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (boost::math::ellint_1(mid) < target) lo = mid;
        else hi = mid;
    }
    o.modulus = 0.5 * (lo + hi);
    return o;
}

FourierWave pendulumPeriodicWave(double c, double T, int N)
{
    const auto orbit = pendulumOrbit(c, T);
    const int M = 2 * N + 1;
    std::vector<double> v(static_cast<std::size_t>(M));
    for (int j = 0; j < M; ++j) v[static_cast<std::size_t>(j)] = orbit.value(j * T / M);
    auto w = FourierWave::fromSamples(v, 0.5 * T);
    // even orbit: coefficients are real
    for (int n = -N; n <= N; ++n) w[n] = w[n].real();
    return w;
}

} // namespace twave
