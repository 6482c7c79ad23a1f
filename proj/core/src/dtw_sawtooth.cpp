#include "twave/dtw.hpp"
#include "twave/exact.hpp"

#include <Eigen/Dense>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>

namespace twave {

double sawtoothSlopeCoefficient(double tau, double xiStar, long m)
{
    if (m % 2 != 0) return 0.0;
    if (m == 0) return 4.0 * xiStar / tau - 1.0;
    const double x = static_cast<double>(m) * std::numbers::pi;
    return 4.0 * std::sin(x * xiStar / tau) / x;
}

std::vector<double> sawtoothSineCoefficients(const WaveParams& p, int N, double xiStar)
{
    p.validate(true);
    if (!(xiStar > 0.0 && xiStar < 0.5 * p.tau))
        throw std::invalid_argument("xi* must lie in (0, tau/2)");
    // unknowns beta_n for odd n = 1, 3, ..., phi_n = i beta_n, phi_{-n} = -i beta_n
    const int K = (N + 1) / 2;
    Eigen::MatrixXd A(K, K);
    Eigen::VectorXd rhs(K);
    for (int r = 0; r < K; ++r) {
        const long n = 2 * r + 1;
        for (int s = 0; s < K; ++s) {
            const long k = 2 * s + 1;
            A(r, s) = -(sawtoothSlopeCoefficient(p.tau, xiStar, n - k) - sawtoothSlopeCoefficient(p.tau, xiStar, n + k));
        }
        A(r, r) += denominator(p, static_cast<double>(n));
        const double alpha = static_cast<double>(n) * std::numbers::pi * xiStar / p.tau;
        rhs(r) = -4.0 * std::cos(alpha) / (static_cast<double>(n) * std::numbers::pi);
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    if (!(lu.rcond() > 1e-14))
        throw std::runtime_error("sawtooth linear system is singular");
    Eigen::VectorXd beta = lu.solve(rhs);
    return std::vector<double>(beta.data(), beta.data() + K);
}

namespace {

double sineSeriesValue(const std::vector<double>& beta, double tau, double xi)
{
    double s = 0.0;
    for (std::size_t r = 0; r < beta.size(); ++r)
        s += beta[r] * std::sin(static_cast<double>(2 * r + 1) * std::numbers::pi * xi / tau);
    return -2.0 * s;
}

} // namespace

SawtoothDiscrete sawtoothDiscreteWave(const WaveParams& p, int N)
{
    return sawtoothDiscreteWave(p, N, sawtoothPeriodicWave(p.c, p.tau).xiStar);
}

SawtoothDiscrete sawtoothDiscreteWave(const WaveParams& p, int N, double guess)
{
    p.validate(true);
    if (N < 1) throw std::invalid_argument("N must be positive");
    int evaluations = 0;
    auto F = [&](double xs) {
        ++evaluations;
        return sineSeriesValue(sawtoothSineCoefficients(p, N, xs), p.tau, xs) - 1.0;
    };
    // expand a bracket around the guess
    const double hi = 0.5 * p.tau;
    double a = guess, b = guess;
    double fa = F(a), fb = fa;
    double step = 0.02 * guess;
    for (int k = 0; k < 60 && fa * fb > 0.0; ++k) {
        a = std::max(a - step, 1e-6 * hi);
        b = std::min(b + step, hi * (1.0 - 1e-9));
        fa = F(a);
        fb = F(b);
        step *= 1.6;
    }
    if (fa * fb > 0.0)
        throw std::runtime_error("sawtooth compatibility condition: no bracket around xi*");
    boost::math::tools::eps_tolerance<double> tol(50);
    std::uintmax_t it = 100;
    auto r = boost::math::tools::toms748_solve(F, a, b, fa, fb, tol, it);
    SawtoothDiscrete out;
    out.xiStar = 0.5 * (r.first + r.second);
    const auto beta = sawtoothSineCoefficients(p, N, out.xiStar);
    out.wave = FourierWave(p.tau, N);
    for (std::size_t r2 = 0; r2 < beta.size(); ++r2) {
        const int n = static_cast<int>(2 * r2 + 1);
        out.wave[n] = cplx(0.0, beta[r2]);
        out.wave[-n] = cplx(0.0, -beta[r2]);
    }
    out.compatibilityResidual = sineSeriesValue(beta, p.tau, out.xiStar) - 1.0;
    out.rootIterations = evaluations;
    return out;
}

} // namespace twave
