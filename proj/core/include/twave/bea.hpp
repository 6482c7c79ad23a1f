#pragma once

#include "twave/dtw.hpp"
#include "twave/nonlin.hpp"
#include "twave/spectral.hpp"

#include <array>
#include <utility>
#include <vector>

namespace twave {

// O2: y'' = f, O4: adds f3, O6: adds f5.
enum class Order { O2, O4, O6 };

struct FDerivatives {
    double f0 = 0.0, f1 = 0.0, f2 = 0.0, f3 = 0.0, f4 = 0.0;
};

class ModifiedEquation {
public:
    ModifiedEquation(Nonlinearity nl, double c, double sigma, double kappa, Order order);

    static double mu2(double c, double sigma, double kappa);
    static double mu4(double c, double sigma, double kappa);

    const Nonlinearity& nonlinearity() const { return nl_; }
    double c() const { return c_; }
    double sigma() const { return sigma_; }
    double kappa() const { return kappa_; }
    Order order() const { return order_; }
    double mu2() const { return mu2_; }
    double mu4() const { return mu4_; }
    ModifiedEquation withOrder(Order o) const;

    // f = -V'/(c^2-1) and its derivatives
    FDerivatives f(double y) const;
    double f3(double y, double ydot) const;
    double f5(double y, double ydot) const;

private:
    Nonlinearity nl_;
    double c_, sigma_, kappa_;
    Order order_;
    double mu2_, mu4_;
};

double modifiedField(const ModifiedEquation& me, double y, double ydot);

// First entry: -s^2 (1 - mu2 s^2 + mu4 s^4). Second: the exact symbol of the same
// operator, -s^2 * (-s^2 / l(s)) with l(s) the symbol of L_{kappa,sigma}.
std::pair<double, double> dispersionConsistency(const ModifiedEquation& me, double s);

// Planar system y' = K dH/dp, p' = -K dH/dy with H = p^2/2 + V(y)/(c^2-1) + H3 (+ H5)
// and K = 1 + K3 (+ K5). Terms through H3/K3 for O4 and through H5/K5 for O6.
class ModifiedHamiltonianSystem {
public:
    explicit ModifiedHamiltonianSystem(ModifiedEquation me);

    double H(double y, double p) const;
    double H3(double y, double p) const;
    double H5(double y, double p) const;
    double K3(double y, double p) const;
    double K5(double y, double p) const;
    double Htilde(double y, double p) const;
    double Ktilde(double y, double p) const;

    // (y', p')
    std::array<double, 2> field(double y, double p) const;
    // p such that y' = ydot
    double momentum(double y, double ydot) const;
    // y'' of the first-order system at (y, ydot), obtained by eliminating p
    double secondDerivative(double y, double ydot) const;

    const ModifiedEquation& equation() const { return me_; }

private:
    struct Parts {
        double K, Ky, Kp, Hp, Hy, Hpy, Hpp;
    };
    Parts parts(double y, double p) const;

    ModifiedEquation me_;
};

struct Trajectory {
    std::vector<double> t;
    std::vector<double> y;
    std::vector<double> ydot;
};

// RK7(8) with local tolerance 1e-12; samples at the given monotone times (first = start).
Trajectory integrateModified(const ModifiedEquation& me, double y0, double ydot0, const std::vector<double>& times);
Trajectory integrateModified(const ModifiedEquation& me, double y0, double ydot0, double T, int samples);

struct ErrorLadder {
    NewtonRun discrete;
    std::vector<double> xi;
    std::array<std::vector<double>, 3> error; // y - y1, y - y2, y - y3
    std::array<double, 3> maxNorm{};
    double y0 = 0.0, ydot0 = 0.0;
};

ErrorLadder errorLadder(const Nonlinearity& nl, double c, double sigma, double kappa, double T, int N,
                        int samples = 1024);

struct ContourResult {
    std::vector<double> sigma;
    std::vector<double> kappa;
    // value[i][j] = log10 rms(y - y2) at (sigma[i], kappa[j]); NaN if the cell failed
    std::vector<std::vector<double>> value;
};

ContourResult contourSweep(const Nonlinearity& nl, double T, double c, const std::vector<double>& sigmaGrid,
                           const std::vector<double>& kappaGrid, int N, unsigned threads = 1);

struct ResonancePoint {
    double T = 0.0;
    bool converged = false;
    double discreteR = 0.0;
    double modifiedR = 0.0;
};

std::vector<ResonancePoint> resonanceComparison(const Nonlinearity& nl, double sigma, double kappa, double c,
                                                const std::vector<double>& Tgrid, int N);

// log-log least squares slope
double fittedSlope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace twave
