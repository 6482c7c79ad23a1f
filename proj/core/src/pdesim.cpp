#include "twave/pdesim.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace twave {

GridField makeField(double dx, double dt, std::vector<double> prev, std::vector<double> curr)
{
    if (!(dx > 0.0) || !(dt > 0.0))
        throw std::invalid_argument("grid spacings must be positive");
    if (prev.size() != curr.size() || curr.empty())
        throw std::invalid_argument("both time levels must have the same nonzero size");
    GridField f;
    f.dx = dx;
    f.dt = dt;
    f.n = 1;
    f.prev = std::move(prev);
    f.curr = std::move(curr);
    return f;
}

GridField leapfrogStep(const Nonlinearity& nl, const GridField& field)
{
    const std::size_t M = field.size();
    if (field.prev.size() != M || M == 0)
        throw std::invalid_argument("leapfrogStep needs two time levels");
    const double r = (field.dt * field.dt) / (field.dx * field.dx);
    const double dt2 = field.dt * field.dt;
    GridField out;
    out.dx = field.dx;
    out.dt = field.dt;
    out.n = field.n + 1;
    out.older = field.prev;
    out.prev = field.curr;
    out.curr.resize(M);
    const auto& u = field.curr;
    for (std::size_t i = 0; i < M; ++i) {
        const double left = u[(i + M - 1) % M], right = u[(i + 1) % M];
        const double v = 2.0 * u[i] - field.prev[i] + r * (right - 2.0 * u[i] + left) - dt2 * nl.dV(u[i]);
        if (!std::isfinite(v))
            throw BlowUpError("leapfrog step produced a non-finite value");
        out.curr[i] = v;
    }
    return out;
}

GridField linearizedStep(const Nonlinearity& nl, const GridField& base, const GridField& tangent, double eps)
{
    const std::size_t M = tangent.size();
    if (base.size() != M || tangent.prev.size() != M)
        throw std::invalid_argument("tangent and base fields differ in size");
    const double r = (tangent.dt * tangent.dt) / (tangent.dx * tangent.dx);
    const double dt2 = tangent.dt * tangent.dt;
    GridField out;
    out.dx = tangent.dx;
    out.dt = tangent.dt;
    out.n = tangent.n + 1;
    out.older = tangent.prev;
    out.prev = tangent.curr;
    out.curr.resize(M);
    const auto& U = tangent.curr;
    for (std::size_t i = 0; i < M; ++i) {
        const double left = U[(i + M - 1) % M], right = U[(i + 1) % M];
        const double adv = eps * (right - left) / (2.0 * tangent.dx);
        out.curr[i] = 2.0 * U[i] - tangent.prev[i] + r * (right - 2.0 * U[i] + left)
            - dt2 * (nl.derivative(base.curr[i], 1) * U[i] - adv);
    }
    return out;
}

MscReport mscResidual(const Nonlinearity&, const GridField& field, const GridField& A, const GridField& B)
{
    const std::size_t M = field.size();
    auto complete = [M](const GridField& g) {
        return g.older.size() == M && g.prev.size() == M && g.curr.size() == M;
    };
    if (!complete(A) || !complete(B))
        throw std::invalid_argument("tangents need three consecutive levels of the field size");
    if (A.n != B.n || A.n != field.n + 1 || A.dx != field.dx || A.dt != field.dt || B.dx != A.dx || B.dt != A.dt)
        throw std::invalid_argument("tangents are not evolved consistently with the field");

    MscReport rep;
    rep.residual.resize(M);
    const double it2 = 1.0 / (A.dt * A.dt), ix2 = 1.0 / (A.dx * A.dx);
    double sa = 0.0, sb = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        const std::size_t ip = (i + 1) % M, im = (i + M - 1) % M;
        const double wUp = A.curr[i] * B.prev[i] - B.curr[i] * A.prev[i];
        const double wDown = A.prev[i] * B.older[i] - B.prev[i] * A.older[i];
        const double kRight = A.prev[ip] * B.prev[i] - B.prev[ip] * A.prev[i];
        const double kLeft = A.prev[i] * B.prev[im] - B.prev[i] * A.prev[im];
        rep.residual[i] = (wUp - wDown) * it2 - (kRight - kLeft) * ix2;
        rep.maxAbs = std::max(rep.maxAbs, std::abs(rep.residual[i]));
        sa = std::max({sa, std::abs(A.curr[i]), std::abs(A.prev[i]), std::abs(A.older[i])});
        sb = std::max({sb, std::abs(B.curr[i]), std::abs(B.prev[i]), std::abs(B.older[i])});
    }
    const double scale = sa * sb * (it2 + ix2);
    rep.relative = scale > 0.0 ? rep.maxAbs / scale : 0.0;
    return rep;
}

TransportReport waveTransportTest(const Nonlinearity& nl, const FourierWave& wave, const WaveParams& p, long steps)
{
    p.validate(false);
    if (!(std::abs(p.c) > 0.0)) throw std::invalid_argument("transport needs c != 0");
    const double q = 2.0 * p.tau / p.sigma;
    const long M = std::lround(q);
    if (M < 3 || std::abs(q - static_cast<double>(M)) > 1e-9 * q)
        throw std::invalid_argument("sigma must divide the period 2 tau");
    TransportReport rep;
    rep.M = static_cast<int>(M);
    rep.steps = steps;
    rep.dx = p.sigma;
    rep.dt = p.kappa / p.c;

    auto level = [&](long n) {
        std::vector<double> xi(static_cast<std::size_t>(M));
        for (long i = 0; i < M; ++i) xi[static_cast<std::size_t>(i)] = static_cast<double>(i) * p.sigma - static_cast<double>(n) * p.kappa;
        return evaluate(wave, xi);
    };
    GridField f = makeField(rep.dx, rep.dt, level(0), level(1));
    rep.cflFlagged = f.cflFlagged();
    for (long s = 0; s < steps; ++s) {
        f = leapfrogStep(nl, f);
        const auto exact = level(f.n);
        double dev = 0.0;
        for (long i = 0; i < M; ++i)
            dev = std::max(dev, std::abs(f.curr[static_cast<std::size_t>(i)] - exact[static_cast<std::size_t>(i)]));
        rep.maxDeviation = std::max(rep.maxDeviation, dev);
        rep.finalDeviation = dev;
    }
    return rep;
}

void writeFieldCsv(std::ostream& os, const GridField& field)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "# n=%ld\n# dx=%.17g\n# dt=%.17g\ni,u\n", field.n, field.dx, field.dt);
    os << buf;
    for (std::size_t i = 0; i < field.curr.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, field.curr[i]);
        os << buf;
    }
}

} // namespace twave
