#include "twave/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace twave {

namespace {

constexpr double kSmallDenominator = 1e-12;

void checkMcKeanParams(const WaveParams& p)
{
    p.validate(false);
}

} // namespace

cplx mckeanCoefficient(const WaveParams& p, long n)
{
    if (n == 0) return 0.5;
    if (n % 2 == 0) return 0.0;
    const double dn = denominator(p, static_cast<double>(n));
    if (std::abs(1.0 + dn) < kSmallDenominator)
        throw ResonanceError("small denominator 1 + d_n", n);
    // h_n = ((-1)^n - 1) / (2 i n pi) = i / (n pi) for odd n
    return cplx(0.0, 1.0 / (static_cast<double>(n) * std::numbers::pi * (1.0 + dn)));
}

McKeanDiagnostics mckeanDiagnostics(const WaveParams& p, long N)
{
    checkMcKeanParams(p);
    McKeanDiagnostics d;
    d.minDenominator = std::numeric_limits<double>::infinity();
    const long start = static_cast<long>(std::floor(0.9 * static_cast<double>(N)));
    for (long n = 1; n <= N; n += 2) {
        const double den = std::abs(1.0 + denominator(p, static_cast<double>(n)));
        if (den < kSmallDenominator) throw ResonanceError("small denominator 1 + d_n", n);
        d.minDenominator = std::min(d.minDenominator, den);
        if (n > start) d.trailingMax = std::max(d.trailingMax, 1.0 / (static_cast<double>(n) * std::numbers::pi * den));
    }
    d.amplification = std::numbers::pi * static_cast<double>(N) * d.trailingMax;
    d.divergent = d.amplification > 20.0;
    return d;
}

McKeanWave mckeanPeriodicWave(double a, const WaveParams& p, int N)
{
    if (!(a > 0.0 && a < 1.0))
        throw std::invalid_argument("McKean threshold a must lie in (0,1)");
    checkMcKeanParams(p);
    McKeanWave out;
    out.wave = FourierWave(p.tau, N);
    for (int n = 0; n <= N; ++n) {
        const cplx v = mckeanCoefficient(p, n);
        out.wave[n] = v;
        out.wave[-n] = std::conj(v);
    }
    out.diagnostics = mckeanDiagnostics(p, N);
    return out;
}

CoefficientScan mckeanScan(const WaveParams& p, long nFrom, long nTo, double threshold)
{
    checkMcKeanParams(p);
    CoefficientScan s;
    long n = std::max(1L, nFrom);
    if (n % 2 == 0) ++n;
    for (; n <= nTo; n += 2) {
        const double den = std::abs(1.0 + denominator(p, static_cast<double>(n)));
        const double v = den < kSmallDenominator ? std::numeric_limits<double>::infinity()
                                                  : 1.0 / (static_cast<double>(n) * std::numbers::pi * den);
        if (v >= threshold) {
            if (s.firstIndex < 0) s.firstIndex = n;
            ++s.count;
        }
        if (v > s.maxAbs) {
            s.maxAbs = v;
            s.argMax = n;
        }
    }
    return s;
}

std::vector<double> mckeanMinDenominator(const WaveParams& p, const std::vector<long>& checkpoints)
{
    checkMcKeanParams(p);
    std::vector<double> out;
    out.reserve(checkpoints.size());
    double running = std::numeric_limits<double>::infinity();
    long n = 1;
    for (long cp : checkpoints) {
        for (; n <= cp; n += 2)
            running = std::min(running, std::abs(1.0 + denominator(p, static_cast<double>(n))));
        out.push_back(running);
    }
    return out;
}

std::vector<double> mckeanRationalCells(const WaveParams& p)
{
    checkMcKeanParams(p);
    const double q = 2.0 * p.tau / p.kappa;
    const double m = p.sigma / p.kappa;
    const long Q = std::lround(q);
    const long mi = std::lround(m);
    if (std::abs(q - Q) > 1e-9 * q || std::abs(m - mi) > 1e-9 * m || Q % 2 != 0 || Q < 2)
        throw std::invalid_argument("rational cells need kappa dividing tau and sigma");
    std::vector<double> h(static_cast<std::size_t>(Q), 0.0);
    for (long j = Q / 2; j < Q; ++j) h[static_cast<std::size_t>(j)] = 1.0;
    auto H = dft(h);
    const double ck = 2.0 * p.c * p.c / (p.kappa * p.kappa);
    const double is = 2.0 / (p.sigma * p.sigma);
    for (long k = 0; k < Q; ++k) {
        const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(Q);
        const double lam = 1.0 + ck * (std::cos(th) - 1.0) - is * (std::cos(static_cast<double>(mi) * th) - 1.0);
        if (std::abs(lam) < kSmallDenominator) throw ResonanceError("singular cell system", k);
        H[static_cast<std::size_t>(k)] /= lam;
    }
    auto x = idft(H);
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j].real();
    return out;
}

} // namespace twave
