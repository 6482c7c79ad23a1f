#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

namespace twave {

using cplx = std::complex<double>;

// c is the wave speed, sigma = dx, kappa = c*dt, tau the half period.
struct WaveParams {
    double c = 0.0;
    double sigma = 1.0;
    double kappa = 1.0;
    double tau = 1.0;

    double period() const { return 2.0 * tau; }
    // Throws std::invalid_argument on non-positive sizes or, if requested, c^2 = 1.
    void validate(bool requireNonSonic = true) const;
};

// Forward transform X_k = sum_j x_j exp(-2 pi i jk/M). Any M >= 1.
std::vector<cplx> dft(std::span<const double> values);
std::vector<cplx> dft(std::span<const cplx> values);
// Inverse including the 1/M factor.
std::vector<cplx> idft(std::span<const cplx> spectrum);

// Truncated Fourier series of a 2*tau periodic profile,
// phi(xi) = sum_{n=-N..N} c_n exp(i n pi xi / tau).
class FourierWave {
public:
    FourierWave() = default;
    FourierWave(double tau, int N);
    FourierWave(double tau, std::vector<cplx> coeffs);

    // Samples on xi_j = j*2tau/M with M = values.size() odd; N = (M-1)/2.
    static FourierWave fromSamples(std::span<const double> values, double tau);
    static FourierWave constant(double tau, int N, double value);
    static FourierWave cosine(double tau, int N, double mean, double amplitude);

    double tau() const { return tau_; }
    double period() const { return 2.0 * tau_; }
    int N() const { return N_; }

    cplx& operator[](int n) { return coeffs_[static_cast<std::size_t>(n + N_)]; }
    const cplx& operator[](int n) const { return coeffs_[static_cast<std::size_t>(n + N_)]; }
    const std::vector<cplx>& coeffs() const { return coeffs_; }

    double maxAbs() const;
    bool hermitian(double relTol = 1e-12) const;
    // Values on the uniform grid of M points (M >= 2N+1) over one period.
    std::vector<double> samples(int M) const;
    // Same coefficients reinterpreted on a new half period.
    FourierWave rescaled(double newTau) const;
    // Truncates or zero pads to a new N.
    FourierWave resized(int newN) const;

private:
    double tau_ = 1.0;
    int N_ = 0;
    std::vector<cplx> coeffs_;
};

// Direct summation; throws std::domain_error when coefficients are not hermitian.
double evaluate(const FourierWave& w, double xi);
std::vector<double> evaluate(const FourierWave& w, std::span<const double> xi);

FourierWave spectralDerivative(const FourierWave& w, int order);

// CSV: header lines "# tau=..." "# N=...", then "n,re,im".
void writeWaveCsv(std::ostream& os, const FourierWave& w);
FourierWave readWaveCsv(std::istream& is);

} // namespace twave
