#pragma once

#include "twave/nonlin.hpp"
#include "twave/spectral.hpp"

#include <array>
#include <utility>

namespace twave {

struct PhasePoint {
    double phi = 0.0;
    double psi = 0.0; // (c^2-1) * dphi/dxi
};

// H = (1/2)(c^2-1)^{-1} psi^2 + V(phi)
double reducedHamiltonian(const Nonlinearity& nl, double c, PhasePoint p);

enum class FixedPointType { Saddle, Center, Degenerate };

// Linearisation of phi' = psi/(c^2-1), psi' = -V'(phi) at an equilibrium.
// Returns the eigenvalue pair (lambda, -lambda) squared and the type.
struct FixedPointInfo {
    double lambdaSquared = 0.0;
    FixedPointType type = FixedPointType::Degenerate;
};
FixedPointInfo classifyFixedPoint(const Nonlinearity& nl, double c, double phi);

double mckeanFront(double c, double xiStar, double xi);

// Continuous sawtooth wave. On [0, 2tau):
//   (0, x*)             A sin(w xi)
//   (x*, tau-x*)        2 - B cosh(w (xi - tau/2))
//   (tau-x*, tau+x*)   -A sin(w (xi - tau))
//   (tau+x*, 2tau-x*)  -2 + B cosh(w (xi - 3tau/2))
//   (2tau-x*, 2tau)     A sin(w (xi - 2tau))
// with w = 1/sqrt(1-c^2), A = 1/sin(w x*), B = 1/cosh(w (tau/2 - x*)).
struct SawtoothPiecewiseWave {
    double c = 0.0;
    double tau = 0.0;
    double xiStar = 0.0;
    double omega = 0.0;
    double A = 0.0;
    double B = 0.0;

    double value(double xi) const;
    // order 1 or 2
    double derivative(double xi, int order) const;
    // junction points x*, tau-x*, tau+x*, 2tau-x* (and 0 = 2tau by periodicity)
    std::array<double, 4> junctions() const;
};

SawtoothPiecewiseWave sawtoothPeriodicWave(double c, double tau);

// Even periodic orbit of (c^2-1) phi'' = -sin(phi), period T, about the
// stable centre (0 for c^2 > 1, pi for c^2 < 1).
struct PendulumOrbit {
    double c = 0.0;
    double T = 0.0;
    double beta = 0.0;     // 1/|c^2 - 1|
    double modulus = 0.0;  // k = sin(amplitude/2)
    double center = 0.0;

    double amplitude() const;
    double value(double xi) const;
    double velocity(double xi) const;
};

PendulumOrbit pendulumOrbit(double c, double T);
// Fourier coefficients from 2N+1 samples of the closed form.
FourierWave pendulumPeriodicWave(double c, double T, int N = 64);

} // namespace twave
