#include "twave/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace twave {

double denominator(const WaveParams& p, double n)
{
    const double pi = std::numbers::pi;
    // 1 - cos x written as 2 sin^2(x/2) to keep small arguments accurate
    const double sk = std::sin(0.5 * n * pi * p.kappa / p.tau);
    const double ss = std::sin(0.5 * n * pi * p.sigma / p.tau);
    return -(4.0 * p.c * p.c / (p.kappa * p.kappa)) * sk * sk + (4.0 / (p.sigma * p.sigma)) * ss * ss;
}

std::vector<double> denominatorSpectrum(const WaveParams& p, int N)
{
    std::vector<double> d(static_cast<std::size_t>(2 * N + 1));
    for (int n = 1; n <= N; ++n) {
        const double v = denominator(p, n);
        d[static_cast<std::size_t>(N + n)] = v;
        d[static_cast<std::size_t>(N - n)] = v;
    }
    d[static_cast<std::size_t>(N)] = 0.0;
    return d;
}

cplx rcont(double c, cplx s)
{
    return 1.0 - c * c * s * s + s * s;
}

cplx rdisc(double c, double sigma, double kappa, cplx s)
{
    const cplx a = std::sin(0.5 * kappa * s);
    const cplx b = std::sin(0.5 * sigma * s);
    return 1.0 - (4.0 * c * c / (kappa * kappa)) * a * a + (4.0 / (sigma * sigma)) * b * b;
}

std::vector<double> dtweResidual(const Nonlinearity& nl, const WaveParams& p, const FourierWave& w,
                                 const std::vector<double>& xi)
{
    std::vector<double> out(xi.size());
    const double ck = p.c * p.c / (p.kappa * p.kappa);
    const double is = 1.0 / (p.sigma * p.sigma);
    for (std::size_t j = 0; j < xi.size(); ++j) {
        const double x = xi[j];
        const double f0 = evaluate(w, x);
        const double dk = evaluate(w, x + p.kappa) - 2.0 * f0 + evaluate(w, x - p.kappa);
        const double ds = evaluate(w, x + p.sigma) - 2.0 * f0 + evaluate(w, x - p.sigma);
        out[j] = ck * dk - is * ds + nl.dV(f0);
    }
    return out;
}

namespace {

// acosh(1 + e) for e >= 0 without cancellation
double acosh1p(double e)
{
    return std::log1p(e + std::sqrt(e * (2.0 + e)));
}

} // namespace

std::vector<cplx> rdiscZerosSigmaEqKappa(double c, double kappa, int count)
{
    if (!(std::abs(c) < 1.0) || !(kappa > 0.0))
        throw std::invalid_argument("rdiscZerosSigmaEqKappa requires |c| < 1 and kappa > 0");
    // cos(kappa s) = 1 + kappa^2 / (2 (1 - c^2)) > 1
    const double im = acosh1p(kappa * kappa / (2.0 * (1.0 - c * c))) / kappa;
    const double re = 2.0 * std::numbers::pi / kappa;
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int n = 0; static_cast<int>(out.size()) < count; ++n) {
        if (n == 0) {
            out.emplace_back(0.0, im);
            out.emplace_back(0.0, -im);
            continue;
        }
        out.emplace_back(n * re, im);
        out.emplace_back(-n * re, -im);
        out.emplace_back(n * re, -im);
        out.emplace_back(-n * re, im);
    }
    out.resize(static_cast<std::size_t>(std::max(count, 0)));
    return out;
}

std::vector<cplx> rdiscZerosSigmaEq2Kappa(double c, double kappa)
{
    if (!(std::abs(c) < 1.0) || !(kappa > 0.0))
        throw std::invalid_argument("rdiscZerosSigmaEq2Kappa requires |c| < 1 and kappa > 0");
    // with y = 1 - cos(kappa s): y^2 - 2(1-c^2) y - kappa^2 = 0
    const double b = 1.0 - c * c;
    const double disc = std::sqrt(b * b + kappa * kappa);
    const double xReal = c * c - disc;  // y = b + disc
    const double yImag = -kappa * kappa / (b + disc); // = b - disc, stable form
    if (!(xReal >= -1.0 && xReal <= 1.0) || !(yImag < 0.0))
        throw std::domain_error("sigma = 2 kappa: root structure is not two real plus two imaginary");
    const double sr = std::acos(xReal) / kappa;
    const double si = acosh1p(-yImag) / kappa;
    return {cplx(sr, 0.0), cplx(-sr, 0.0), cplx(0.0, si), cplx(0.0, -si)};
}

std::vector<double> resonanceWindow(double T)
{
    constexpr int K = 1000;
    std::vector<double> xi(K);
    for (int k = 0; k < K; ++k) xi[static_cast<std::size_t>(k)] = 0.2 * T + (k + 1) * (0.1 * T) / (K + 1);
    return xi;
}

double resonanceSpread(const std::vector<double>& secondDerivative)
{
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double v : secondDerivative) {
        lo = std::min(lo, std::abs(v));
        hi = std::max(hi, std::abs(v));
    }
    if (!(hi > lo)) return -std::numeric_limits<double>::infinity();
    return std::log10(hi - lo);
}

double resonanceMeasure(const FourierWave& w)
{
    const auto d2 = spectralDerivative(w, 2);
    return resonanceSpread(evaluate(d2, resonanceWindow(w.period())));
}

} // namespace twave
