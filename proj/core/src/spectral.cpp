#include "twave/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace twave {

namespace {

// FFTW planning is not thread safe, execution with fresh arrays is.
std::mutex& planMutex()
{
    static std::mutex m;
    return m;
}

std::vector<cplx> transform(std::vector<cplx> data, int sign)
{
    const int M = static_cast<int>(data.size());
    if (M == 0) return data;
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planMutex());
        plan = fftw_plan_dft_1d(M, buf, buf, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planMutex());
        fftw_destroy_plan(plan);
    }
    return data;
}

} // namespace

void WaveParams::validate(bool requireNonSonic) const
{
    if (!(sigma > 0.0) || !(kappa > 0.0) || !(tau > 0.0))
        throw std::invalid_argument("sigma, kappa and tau must be positive");
    if (!std::isfinite(c))
        throw std::invalid_argument("wave speed must be finite");
    if (requireNonSonic && std::abs(c * c - 1.0) < 1e-14)
        throw std::invalid_argument("c^2 = 1 is not allowed");
}

std::vector<cplx> dft(std::span<const double> values)
{
    return transform(std::vector<cplx>(values.begin(), values.end()), FFTW_FORWARD);
}

std::vector<cplx> dft(std::span<const cplx> values)
{
    return transform(std::vector<cplx>(values.begin(), values.end()), FFTW_FORWARD);
}

std::vector<cplx> idft(std::span<const cplx> spectrum)
{
    auto out = transform(std::vector<cplx>(spectrum.begin(), spectrum.end()), FFTW_BACKWARD);
    const double inv = out.empty() ? 0.0 : 1.0 / static_cast<double>(out.size());
    for (auto& z : out) z *= inv;
    return out;
}

FourierWave::FourierWave(double tau, int N)
    : tau_(tau), N_(N), coeffs_(static_cast<std::size_t>(2 * N + 1))
{
    if (!(tau > 0.0) || N < 0)
        throw std::invalid_argument("FourierWave needs tau > 0 and N >= 0");
}

FourierWave::FourierWave(double tau, std::vector<cplx> coeffs)
    : tau_(tau), N_(static_cast<int>(coeffs.size() / 2)), coeffs_(std::move(coeffs))
{
    if (!(tau > 0.0) || coeffs_.size() % 2 == 0)
        throw std::invalid_argument("FourierWave needs tau > 0 and an odd coefficient count");
}

FourierWave FourierWave::fromSamples(std::span<const double> values, double tau)
{
    const int M = static_cast<int>(values.size());
    if (M % 2 == 0)
        throw std::invalid_argument("fromSamples expects an odd number of samples");
    const int N = (M - 1) / 2;
    auto X = dft(values);
    FourierWave w(tau, N);
    const double inv = 1.0 / M;
    for (int n = -N; n <= N; ++n)
        w[n] = X[static_cast<std::size_t>((n + M) % M)] * inv;
    // exact hermitian symmetry for real input
    for (int n = 1; n <= N; ++n) {
        const cplx avg = 0.5 * (w[n] + std::conj(w[-n]));
        w[n] = avg;
        w[-n] = std::conj(avg);
    }
    w[0] = w[0].real();
    return w;
}

FourierWave FourierWave::constant(double tau, int N, double value)
{
    FourierWave w(tau, N);
    w[0] = value;
    return w;
}

FourierWave FourierWave::cosine(double tau, int N, double mean, double amplitude)
{
    FourierWave w(tau, std::max(N, 1));
    w[0] = mean;
    w[1] = w[-1] = 0.5 * amplitude;
    return w;
}

double FourierWave::maxAbs() const
{
    double m = 0.0;
    for (const auto& z : coeffs_) m = std::max(m, std::abs(z));
    return m;
}

bool FourierWave::hermitian(double relTol) const
{
    const double tol = relTol * std::max(maxAbs(), 1e-300);
    if (std::abs((*this)[0].imag()) > tol) return false;
    for (int n = 1; n <= N_; ++n)
        if (std::abs((*this)[-n] - std::conj((*this)[n])) > tol) return false;
    return true;
}

std::vector<double> FourierWave::samples(int M) const
{
    if (M < 2 * N_ + 1)
        throw std::invalid_argument("sample count must be at least 2N+1");
    std::vector<cplx> spec(static_cast<std::size_t>(M));
    for (int n = -N_; n <= N_; ++n)
        spec[static_cast<std::size_t>((n + M) % M)] = (*this)[n];
    auto x = transform(std::move(spec), FFTW_BACKWARD);
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j].real();
    return out;
}

FourierWave FourierWave::rescaled(double newTau) const
{
    FourierWave w = *this;
    if (!(newTau > 0.0)) throw std::invalid_argument("tau must be positive");
    w.tau_ = newTau;
    return w;
}

FourierWave FourierWave::resized(int newN) const
{
    FourierWave w(tau_, newN);
    const int m = std::min(newN, N_);
    for (int n = -m; n <= m; ++n) w[n] = (*this)[n];
    return w;
}

namespace {

// sum_n c_n e^{i n theta} for a hermitian series, as 2 Re sum_{n>0} + c_0.
// The phasor recurrence is re-seeded every 64 terms to keep drift at round-off.
double hermitianSum(const FourierWave& w, double theta)
{
    double acc = w[0].real();
    cplx partial = 0.0;
    const cplx step = std::polar(1.0, theta);
    cplx ph = step;
    for (int n = 1; n <= w.N(); ++n) {
        if ((n & 63) == 0) ph = std::polar(1.0, theta * n);
        partial += w[n] * ph;
        ph *= step;
    }
    return acc + 2.0 * partial.real();
}

void requireHermitian(const FourierWave& w)
{
    if (!w.hermitian(1e-12))
        throw std::domain_error("FourierWave is not hermitian; real evaluation undefined");
}

} // namespace

double evaluate(const FourierWave& w, double xi)
{
    requireHermitian(w);
    return hermitianSum(w, std::numbers::pi * xi / w.tau());
}

std::vector<double> evaluate(const FourierWave& w, std::span<const double> xi)
{
    requireHermitian(w);
    std::vector<double> out(xi.size());
    for (std::size_t k = 0; k < xi.size(); ++k)
        out[k] = hermitianSum(w, std::numbers::pi * xi[k] / w.tau());
    return out;
}

FourierWave spectralDerivative(const FourierWave& w, int order)
{
    if (order < 1 || order > 4)
        throw std::invalid_argument("spectralDerivative: order must be in 1..4");
    FourierWave d = w;
    const double k0 = std::numbers::pi / w.tau();
    for (int n = -w.N(); n <= w.N(); ++n) {
        const cplx ik(0.0, k0 * n);
        cplx f = 1.0;
        for (int r = 0; r < order; ++r) f *= ik;
        d[n] = w[n] * f;
    }
    return d;
}

void writeWaveCsv(std::ostream& os, const FourierWave& w)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, "# tau=%.17g\n# N=%d\nn,re,im\n", w.tau(), w.N());
    os << buf;
    for (int n = -w.N(); n <= w.N(); ++n) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", n, w[n].real(), w[n].imag());
        os << buf;
    }
}

FourierWave readWaveCsv(std::istream& is)
{
    std::string line;
    double tau = -1.0;
    int N = -1;
    while (std::getline(is, line)) {
        if (line.rfind("# tau=", 0) == 0) tau = std::stod(line.substr(6));
        else if (line.rfind("# N=", 0) == 0) N = std::stoi(line.substr(4));
        else if (line.rfind("n,", 0) == 0) break;
    }
    if (tau <= 0.0 || N < 0)
        throw std::runtime_error("wave CSV header missing tau or N");
    FourierWave w(tau, N);
    int read = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string a, b, c;
        std::getline(ss, a, ',');
        std::getline(ss, b, ',');
        std::getline(ss, c, ',');
        const int n = std::stoi(a);
        if (n < -N || n > N) throw std::runtime_error("wave CSV index out of range");
        w[n] = cplx(std::stod(b), std::stod(c));
        ++read;
    }
    if (read != 2 * N + 1) throw std::runtime_error("wave CSV has wrong number of rows");
    return w;
}

} // namespace twave
