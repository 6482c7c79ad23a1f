#include "twave/dtw.hpp"
#include "twave/exact.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace twave {

std::string toString(NewtonStatus s)
{
    switch (s) {
    case NewtonStatus::Converged: return "converged";
    case NewtonStatus::NotConverged: return "not-converged";
    case NewtonStatus::Singular: return "singular";
    }
    return "?";
}

namespace {

double infNorm(const Eigen::VectorXd& v)
{
    return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
}

// L phi = F^{-1} diag(d) F phi on M = 2N+1 points
Eigen::VectorXd applyL(const std::vector<double>& dWrapped, const Eigen::VectorXd& phi)
{
    const auto X = dft(std::span<const double>(phi.data(), static_cast<std::size_t>(phi.size())));
    std::vector<cplx> Y(X.size());
    for (std::size_t k = 0; k < X.size(); ++k) Y[k] = X[k] * dWrapped[k];
    const auto y = idft(Y);
    Eigen::VectorXd out(phi.size());
    for (Eigen::Index j = 0; j < phi.size(); ++j) out(j) = y[static_cast<std::size_t>(j)].real();
    return out;
}

} // namespace

NewtonRun smoothNewtonWave(const Nonlinearity& nl, const WaveParams& p, int N, const FourierWave& initial,
                           int maxIterations)
{
    if (!nl.smooth())
        throw std::invalid_argument("smoothNewtonWave needs a smooth nonlinearity");
    p.validate(false);
    if (N < 1 || N > 4096)
        throw std::invalid_argument("N must lie in 1..4096 for dense solves");

    const int M = 2 * N + 1;
    const double h = p.period() / M;
    const auto d = denominatorSpectrum(p, N);
    std::vector<double> dWrapped(static_cast<std::size_t>(M));
    for (int n = -N; n <= N; ++n) dWrapped[static_cast<std::size_t>((n + M) % M)] = d[static_cast<std::size_t>(n + N)];

    // first column of the circulant L
    std::vector<cplx> dc(dWrapped.begin(), dWrapped.end());
    const auto col = idft(dc);
    Eigen::MatrixXd L(M, M);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) L(i, j) = col[static_cast<std::size_t>((i - j + M) % M)].real();

    Eigen::VectorXd phi(M);
    for (int j = 0; j < M; ++j) phi(j) = evaluate(initial, j * h);

    NewtonRun run;
    run.params = p;
    run.N = N;
    for (int it = 0; it <= maxIterations; ++it) {
        Eigen::VectorXd r = applyL(dWrapped, phi);
        for (int j = 0; j < M; ++j) r(j) += nl.dV(phi(j));
        const double rn = infNorm(r);
        run.residualHistory.push_back(rn);
        if (!std::isfinite(rn)) break;
        if (rn <= 1e-10 * (1.0 + infNorm(phi))) {
            run.converged = true;
            run.status = NewtonStatus::Converged;
            break;
        }
        if (it == maxIterations) break;
        Eigen::MatrixXd J = L;
        for (int j = 0; j < M; ++j) J(j, j) += nl.derivative(phi(j), 1);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
        if (!(lu.rcond() > 1e-15)) {
            run.status = NewtonStatus::Singular;
            break;
        }
        phi -= lu.solve(r);
    }

    run.wave = FourierWave::fromSamples(std::span<const double>(phi.data(), static_cast<std::size_t>(M)), p.tau);
    if (run.converged) {
        run.resonanceR = resonanceMeasure(run.wave);
        for (int n = 0; n <= N; ++n)
            if (n > 0.9 * N) run.tailMax = std::max(run.tailMax, std::abs(run.wave[n]));
    }
    return run;
}

FourierWave defaultSeed(const Nonlinearity& nl, double c, double T, int N)
{
    if (nl.kind() == NlKind::Sine) {
        try {
            return pendulumPeriodicWave(c, T, N);
        } catch (const std::domain_error&) {
            // below the linear limit: fall through to a small cosine
        }
    }
    const double center = (nl.kind() == NlKind::Sine && c * c < 1.0) ? std::numbers::pi : 0.0;
    return FourierWave::cosine(0.5 * T, N, center, 0.1);
}

std::vector<NewtonRun> continuationInT(const Nonlinearity& nl, double sigma, double kappa, double c,
                                       const std::vector<double>& Tgrid, int N)
{
    if (Tgrid.empty()) return {};
    if (!std::is_sorted(Tgrid.begin(), Tgrid.end()))
        throw std::invalid_argument("Tgrid must be increasing");
    if (Tgrid.front() < 2.0 * std::numbers::pi - 1e-12)
        throw std::invalid_argument("Tgrid must start at or above 2 pi");

    std::vector<NewtonRun> runs;
    runs.reserve(Tgrid.size());
    FourierWave seed = defaultSeed(nl, c, Tgrid.front(), N);
    double lastGoodT = Tgrid.front();
    bool haveGood = false;
    for (double T : Tgrid) {
        const WaveParams p{c, sigma, kappa, 0.5 * T};
        NewtonRun run = smoothNewtonWave(nl, p, N, seed.rescaled(0.5 * T));
        if (!run.converged && haveGood) {
            // one halved step: solve at the midpoint and restart from there
            const double Tm = 0.5 * (lastGoodT + T);
            const WaveParams pm{c, sigma, kappa, 0.5 * Tm};
            NewtonRun mid = smoothNewtonWave(nl, pm, N, seed.rescaled(0.5 * Tm));
            if (mid.converged) run = smoothNewtonWave(nl, p, N, mid.wave.rescaled(0.5 * T));
        }
        if (run.converged) {
            seed = run.wave;
            lastGoodT = T;
            haveGood = true;
        }
        runs.push_back(std::move(run));
    }
    return runs;
}

} // namespace twave
