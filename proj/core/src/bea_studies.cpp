#include "twave/bea.hpp"
#include "twave/parallel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace twave {

double fittedSlope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fittedSlope needs two or more paired points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

struct MatchedStart {
    double y0, ydot0;
};

MatchedStart startFromWave(const FourierWave& w)
{
    return {evaluate(w, 0.0), evaluate(spectralDerivative(w, 1), 0.0)};
}

std::vector<double> uniformGrid(double T, int samples)
{
    std::vector<double> xi(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) xi[static_cast<std::size_t>(k)] = T * k / samples;
    return xi;
}

} // namespace

ErrorLadder errorLadder(const Nonlinearity& nl, double c, double sigma, double kappa, double T, int N, int samples)
{
    ErrorLadder out;
    const WaveParams p{c, sigma, kappa, 0.5 * T};
    out.discrete = smoothNewtonWave(nl, p, N, defaultSeed(nl, c, T, N));
    if (!out.discrete.converged)
        throw std::runtime_error("error ladder: discrete wave did not converge (" + toString(out.discrete.status) + ")");
    const auto start = startFromWave(out.discrete.wave);
    out.y0 = start.y0;
    out.ydot0 = start.ydot0;
    out.xi = uniformGrid(T, samples);
    const auto y = evaluate(out.discrete.wave, out.xi);
    const Order orders[3] = {Order::O2, Order::O4, Order::O6};
    for (int k = 0; k < 3; ++k) {
        const ModifiedEquation me(nl, c, sigma, kappa, orders[k]);
        const auto tr = integrateModified(me, start.y0, start.ydot0, out.xi);
        auto& e = out.error[static_cast<std::size_t>(k)];
        e.resize(y.size());
        double m = 0.0;
        for (std::size_t j = 0; j < y.size(); ++j) {
            e[j] = y[j] - tr.y[j];
            m = std::max(m, std::abs(e[j]));
        }
        out.maxNorm[static_cast<std::size_t>(k)] = m;
    }
    return out;
}

ContourResult contourSweep(const Nonlinearity& nl, double T, double c, const std::vector<double>& sigmaGrid,
                           const std::vector<double>& kappaGrid, int N, unsigned threads)
{
    ContourResult out;
    out.sigma = sigmaGrid;
    out.kappa = kappaGrid;
    out.value.assign(sigmaGrid.size(), std::vector<double>(kappaGrid.size(), std::numeric_limits<double>::quiet_NaN()));
    const auto xi = uniformGrid(T, 1024);
    const FourierWave seed = defaultSeed(nl, c, T, N);
    const std::size_t nk = kappaGrid.size();
    parallelFor(sigmaGrid.size() * nk, threads, [&](std::size_t idx) {
        const std::size_t i = idx / nk, j = idx % nk;
        const double s = sigmaGrid[i], k = kappaGrid[j];
        try {
            const auto run = smoothNewtonWave(nl, WaveParams{c, s, k, 0.5 * T}, N, seed);
            if (!run.converged) return;
            const auto start = startFromWave(run.wave);
            const auto y = evaluate(run.wave, xi);
            const auto tr = integrateModified(ModifiedEquation(nl, c, s, k, Order::O4), start.y0, start.ydot0, xi);
            double acc = 0.0;
            for (std::size_t q = 0; q < y.size(); ++q) acc += (y[q] - tr.y[q]) * (y[q] - tr.y[q]);
            out.value[i][j] = std::log10(std::sqrt(acc / static_cast<double>(y.size())));
        } catch (const std::exception&) {
            // failed cell keeps the NaN sentinel
        }
    });
    return out;
}

std::vector<ResonancePoint> resonanceComparison(const Nonlinearity& nl, double sigma, double kappa, double c,
                                                const std::vector<double>& Tgrid, int N)
{
    const auto runs = continuationInT(nl, sigma, kappa, c, Tgrid, N);
    std::vector<ResonancePoint> out(runs.size());
    for (std::size_t k = 0; k < runs.size(); ++k) {
        out[k].T = Tgrid[k];
        out[k].converged = runs[k].converged;
        if (!runs[k].converged) {
            out[k].discreteR = out[k].modifiedR = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        out[k].discreteR = runs[k].resonanceR;
        const auto start = startFromWave(runs[k].wave);
        const ModifiedEquation me(nl, c, sigma, kappa, Order::O4);
        auto times = resonanceWindow(Tgrid[k]);
        times.insert(times.begin(), 0.0);
        const auto tr = integrateModified(me, start.y0, start.ydot0, times);
        std::vector<double> ydd(tr.y.size() - 1);
        for (std::size_t q = 1; q < tr.y.size(); ++q) ydd[q - 1] = modifiedField(me, tr.y[q], tr.ydot[q]);
        out[k].modifiedR = resonanceSpread(ydd);
    }
    return out;
}

} // namespace twave
