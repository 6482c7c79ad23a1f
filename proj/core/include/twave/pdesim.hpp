#pragma once

#include "twave/nonlin.hpp"
#include "twave/spectral.hpp"

#include <array>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace twave {

// Periodic space-time field for the 5-point scheme. `prev` and `curr` are the
// levels n-1 and n; `older` (level n-2) is kept after the first step.
struct GridField {
    double dx = 1.0;
    double dt = 1.0;
    long n = 1;
    std::vector<double> older;
    std::vector<double> prev;
    std::vector<double> curr;

    double cfl() const { return dt / dx; }
    bool cflFlagged() const { return cfl() >= 1.0; }
    std::size_t size() const { return curr.size(); }
};

class BlowUpError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

GridField makeField(double dx, double dt, std::vector<double> prev, std::vector<double> curr);

GridField leapfrogStep(const Nonlinearity& nl, const GridField& field);

// Variational stencil about `base` (levels n-1, n): uses V''(u_i^n).
// `perturbation` adds eps (U_{i+1} - U_{i-1}) / (2 dx) to the right-hand side,
// which breaks the multisymplectic structure; zero gives the exact linearisation.
GridField linearizedStep(const Nonlinearity& nl, const GridField& base, const GridField& tangent,
                         double perturbation = 0.0);

struct MscReport {
    std::vector<double> residual; // per grid point at the tangent's middle level
    double maxAbs = 0.0;
    double relative = 0.0;        // maxAbs / (|A| |B| (1/dt^2 + 1/dx^2))
};

// Discrete conservation law for two tangent fields A, B holding levels n-1, n, n+1
// (older, prev, curr):
//   (W^{n+1/2} - W^{n-1/2}) / dt^2 - (K_{i+1/2} - K_{i-1/2}) / dx^2
// with W_i^{n+1/2} = A_i^{n+1} B_i^n - B_i^{n+1} A_i^n and
//      K_{i+1/2}^n = A_{i+1}^n B_i^n - B_{i+1}^n A_i^n.
MscReport mscResidual(const Nonlinearity& nl, const GridField& field, const GridField& tangentA,
                      const GridField& tangentB);

struct TransportReport {
    int M = 0;
    long steps = 0;
    double dx = 0.0, dt = 0.0;
    bool cflFlagged = false;
    double finalDeviation = 0.0;
    double maxDeviation = 0.0;
};

// u_i^n = phi(i sigma - n kappa) on a periodic grid of M = 2 tau / sigma points, dt = kappa / c.
TransportReport waveTransportTest(const Nonlinearity& nl, const FourierWave& wave, const WaveParams& p, long steps);

void writeFieldCsv(std::ostream& os, const GridField& field);

// ---- steady states: u'' = V'(u) ------------------------------------------------

enum class SteadyScheme { LeapfrogSpatial, LobattoIIIA3, Continuous };
enum class OrbitClass { Heteroclinic, Homoclinic, Periodic, Unbounded };

const char* toString(SteadyScheme s);
const char* toString(OrbitClass c);

struct SteadyStateOrbit {
    SteadyScheme scheme = SteadyScheme::LeapfrogSpatial;
    double dx = 0.0;
    std::vector<std::array<double, 2>> samples; // (u, u')
    OrbitClass classification = OrbitClass::Unbounded;
    double startEquilibrium = 0.0;
    double endEquilibrium = 0.0;
    double endDistance = 0.0; // distance of the last sample to endEquilibrium
};

// Zeros of V' in [lo, hi] by scanning and bisection.
std::vector<double> steadyEquilibria(const Nonlinearity& nl, double lo, double hi);

// One step of the spatial map in phase coordinates (u, u').
class SteadyStepper {
public:
    SteadyStepper(Nonlinearity nl, SteadyScheme scheme, double dx);
    std::array<double, 2> step(const std::array<double, 2>& z) const;
    // unstable eigenvalue / eigenvector of the step map at a saddle
    std::pair<double, std::array<double, 2>> unstableDirection(double saddle) const;
    SteadyScheme scheme() const { return scheme_; }
    double dx() const { return dx_; }
    const Nonlinearity& nonlinearity() const { return nl_; }

private:
    std::array<double, 2> lobatto(const std::array<double, 2>& z) const;
    std::array<double, 2> flow(const std::array<double, 2>& z) const;

    Nonlinearity nl_;
    SteadyScheme scheme_;
    double dx_;
};

std::vector<SteadyStateOrbit> steadyStatePortrait(const Nonlinearity& nl, SteadyScheme scheme, double dx,
                                                  const std::vector<std::array<double, 2>>& seeds);

struct SaddleConnections {
    double saddle = 0.0;
    double multiplier = 0.0;
    std::vector<SteadyStateOrbit> heteroclinic;
    std::vector<SteadyStateOrbit> homoclinic;
    int seedsScanned = 0;
};

// Sweeps the two unstable branches of the saddle over one fundamental domain and
// bisects on changes of the orbit's fate at the neighbouring saddle (connection to it)
// and on return to the start saddle (homoclinic loop).
SaddleConnections saddleConnections(const Nonlinearity& nl, SteadyScheme scheme, double dx, double saddle);

void writeOrbitCsv(std::ostream& os, const SteadyStateOrbit& orbit);

} // namespace twave
