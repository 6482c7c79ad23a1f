#pragma once

#include "twave/nonlin.hpp"
#include "twave/spectral.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace twave {

// d_n = (2c^2/kappa^2)(cos(n pi kappa/tau) - 1) - (2/sigma^2)(cos(n pi sigma/tau) - 1)
double denominator(const WaveParams& p, double n);
// values for n = -N..N stored at index n + N
std::vector<double> denominatorSpectrum(const WaveParams& p, int N);

// R_Cont(s) = 1 - c^2 s^2 + s^2
cplx rcont(double c, cplx s);
// R_Disc(s) = 1 - (2c^2/kappa^2)(1 - cos kappa s) + (2/sigma^2)(1 - cos sigma s)
cplx rdisc(double c, double sigma, double kappa, cplx s);

// (c^2/kappa^2) D_kappa phi - (1/sigma^2) D_sigma phi + V'(phi) at each xi.
std::vector<double> dtweResidual(const Nonlinearity& nl, const WaveParams& p, const FourierWave& w,
                                 const std::vector<double>& xi);

// Zeros of R_Disc for sigma = kappa, ordered by |Im| then |Re|, in +- pairs.
std::vector<cplx> rdiscZerosSigmaEqKappa(double c, double kappa, int count);
// The four fundamental zeros for sigma = 2 kappa: +-real and +-imaginary.
std::vector<cplx> rdiscZerosSigmaEq2Kappa(double c, double kappa);

class ResonanceError : public std::runtime_error {
public:
    ResonanceError(const std::string& what, long index) : std::runtime_error(what), index(index) {}
    long index;
};

// ---- McKean periodic waves -------------------------------------------------

// phi_n = h_n / (1 + d_n), h the 0/1 square wave (0 on [0,tau), 1 on (tau,2tau)).
cplx mckeanCoefficient(const WaveParams& p, long n);

struct McKeanDiagnostics {
    double trailingMax = 0.0;    // max |phi_n| over 0.9N < |n| <= N
    double amplification = 0.0;  // pi N trailingMax
    bool divergent = false;      // amplification > 20
    double minDenominator = 0.0; // min |1 + d_n| over odd 0 < n <= N
};

struct McKeanWave {
    FourierWave wave;
    McKeanDiagnostics diagnostics;
};

McKeanWave mckeanPeriodicWave(double a, const WaveParams& p, int N);
// Diagnostics only; streams the closed form so N may be large.
McKeanDiagnostics mckeanDiagnostics(const WaveParams& p, long N);

struct CoefficientScan {
    long count = 0;        // indices with |phi_n| >= threshold
    long firstIndex = -1;  // smallest such index
    long argMax = -1;
    double maxAbs = 0.0;
};
CoefficientScan mckeanScan(const WaveParams& p, long nFrom, long nTo, double threshold);

// Running minimum of |1 + d_m| over odd m <= n, sampled at the given n values.
std::vector<double> mckeanMinDenominator(const WaveParams& p, const std::vector<long>& checkpoints);

// Exact infinite-N wave when kappa divides tau and sigma: piecewise constant on
// the cells [j kappa, (j+1) kappa), j = 0..2tau/kappa - 1.
std::vector<double> mckeanRationalCells(const WaveParams& p);

// ---- Sawtooth discrete waves ----------------------------------------------

struct SawtoothDiscrete {
    FourierWave wave;
    double xiStar = 0.0;
    double compatibilityResidual = 0.0; // phi(xi*) - 1
    int rootIterations = 0;
};

// Sine coefficients of the odd wave for fixed xi*: phi = -2 sum beta_n sin(n pi xi/tau).
std::vector<double> sawtoothSineCoefficients(const WaveParams& p, int N, double xiStar);
// g_m = Fourier coefficient of the slope indicator (2 chi - 1), m even
double sawtoothSlopeCoefficient(double tau, double xiStar, long m);
SawtoothDiscrete sawtoothDiscreteWave(const WaveParams& p, int N);
SawtoothDiscrete sawtoothDiscreteWave(const WaveParams& p, int N, double xiStarGuess);

// ---- Smooth Newton ---------------------------------------------------------

enum class NewtonStatus { Converged, NotConverged, Singular };

struct NewtonRun {
    WaveParams params;
    int N = 0;
    FourierWave wave;
    std::vector<double> residualHistory;
    bool converged = false;
    NewtonStatus status = NewtonStatus::NotConverged;
    double resonanceR = 0.0;
    double tailMax = 0.0;
};

std::string toString(NewtonStatus s);

NewtonRun smoothNewtonWave(const Nonlinearity& nl, const WaveParams& p, int N, const FourierWave& initial,
                           int maxIterations = 25);

// Seed used when no previous wave exists.
FourierWave defaultSeed(const Nonlinearity& nl, double c, double T, int N);

std::vector<NewtonRun> continuationInT(const Nonlinearity& nl, double sigma, double kappa, double c,
                                       const std::vector<double>& Tgrid, int N);

// log10(max - min) of |phi''| on 1000 points of (0.2T, 0.3T); -inf if flat.
double resonanceMeasure(const FourierWave& w);
double resonanceSpread(const std::vector<double>& secondDerivative);
std::vector<double> resonanceWindow(double T);

} // namespace twave
