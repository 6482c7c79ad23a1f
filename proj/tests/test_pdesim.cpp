#include <doctest.h>

#include "twave/bea.hpp"
#include "twave/dtw.hpp"
#include "twave/pdesim.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace twave;

namespace {

const double pi = std::numbers::pi;

Nonlinearity freeWave()
{
    CustomFamily fam;
    fam.V = [](double) { return 0.0; };
    for (auto& d : fam.dV) d = [](double) { return 0.0; };
    return Nonlinearity::custom(fam, "free");
}

std::vector<double> level(const FourierWave& w, int M, double sigma, double shift)
{
    std::vector<double> u(static_cast<std::size_t>(M));
    for (int i = 0; i < M; ++i) u[static_cast<std::size_t>(i)] = evaluate(w, i * sigma - shift);
    return u;
}

double maxDiff(const std::vector<double>& a, const std::vector<double>& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

TEST_CASE("equilibria are fixed by the scheme")
{
    const auto f = makeField(0.1, 0.05, std::vector<double>(16, pi), std::vector<double>(16, pi));
    const auto g = leapfrogStep(Nonlinearity::sine(), f);
    for (double v : g.curr) CHECK(v == doctest::Approx(pi));
    CHECK_FALSE(f.cflFlagged());
    CHECK(makeField(0.1, 0.1, {0.0}, {0.0}).cflFlagged());
}

TEST_CASE("free waves are transported exactly at unit CFL")
{
    const int M = 50;
    const double dx = 0.2;
    auto g = [&](double x) { return std::sin(2 * pi * x / (M * dx)) + 0.3 * std::cos(6 * pi * x / (M * dx)); };
    std::vector<double> a(M), b(M);
    for (int i = 0; i < M; ++i) {
        a[static_cast<std::size_t>(i)] = g(i * dx);
        b[static_cast<std::size_t>(i)] = g(i * dx - dx);
    }
    auto f = makeField(dx, dx, a, b);
    const auto nl = freeWave();
    for (int n = 2; n <= 40; ++n) f = leapfrogStep(nl, f);
    double err = 0.0;
    for (int i = 0; i < M; ++i) err = std::max(err, std::abs(f.curr[static_cast<std::size_t>(i)] - g(i * dx - 40 * dx)));
    CHECK(err < 1e-12);
}

TEST_CASE("leapfrog is time reversible")
{
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<double> a(32), b(32);
    for (auto& v : a) v = u(gen);
    for (auto& v : b) v = u(gen);
    const auto nl = Nonlinearity::sine();
    auto f = makeField(0.1, 0.07, a, b);
    for (int k = 0; k < 25; ++k) f = leapfrogStep(nl, f);
    auto r = makeField(0.1, 0.07, f.curr, f.prev);
    for (int k = 0; k < 25; ++k) r = leapfrogStep(nl, r);
    CHECK(maxDiff(r.curr, a) < 1e-11);
    CHECK(maxDiff(r.prev, b) < 1e-11);
}

TEST_CASE("a discrete travelling wave solves the 5-point scheme")
{
    const auto s = Nonlinearity::sine();
    const double c = 0.5, kappa = 0.05, sigma = 0.1;
    const WaveParams p{c, sigma, kappa, 64 * sigma / 2};
    const auto run = smoothNewtonWave(s, p, 64, defaultSeed(s, c, p.period(), 64));
    REQUIRE(run.converged);
    const int M = 64;
    const auto f = makeField(sigma, kappa / c, level(run.wave, M, sigma, 0.0), level(run.wave, M, sigma, kappa));
    const auto g = leapfrogStep(s, f);
    CHECK(maxDiff(g.curr, level(run.wave, M, sigma, 2 * kappa)) <= 1e-8);
}

TEST_CASE("travelling wave transport")
{
    const auto s = Nonlinearity::sine();
    const double c = 0.5, kappa = 0.01, sigma = 0.02;
    const WaveParams p{c, sigma, kappa, 320 * sigma / 2};
    const auto run = smoothNewtonWave(s, p, 64, defaultSeed(s, c, p.period(), 64));
    REQUIRE(run.converged);
    const auto rep = waveTransportTest(s, run.wave, p, 1000);
    CHECK(rep.M == 320);
    CHECK(rep.cflFlagged); // dt/dx = kappa/(c sigma) = 1
    CHECK(rep.finalDeviation <= 1e-6);
    const auto zero = waveTransportTest(s, FourierWave::constant(p.tau, 8, 0.0), p, 100);
    CHECK(zero.maxDeviation == 0.0);
}

TEST_CASE("perturbed waves stay bounded below unit CFL")
{
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> u(-1e-3, 1e-3);
    const int M = 100;
    std::vector<double> a(M), b(M);
    for (int i = 0; i < M; ++i) {
        a[static_cast<std::size_t>(i)] = 0.5 * std::sin(2 * pi * i / M) + u(gen);
        b[static_cast<std::size_t>(i)] = 0.5 * std::sin(2 * pi * (i - 0.5) / M) + u(gen);
    }
    auto f = makeField(0.1, 0.05, a, b);
    double peak = 0.0;
    for (int n = 0; n < 1000; ++n) {
        f = leapfrogStep(Nonlinearity::sine(), f);
        for (double v : f.curr) peak = std::max(peak, std::abs(v));
    }
    CHECK(peak < 2.0);
}

TEST_CASE("multisymplectic conservation law")
{
    std::mt19937 gen(9);
    std::uniform_real_distribution<double> u(-1, 1);
    const int M = 40;
    const auto nl = Nonlinearity::sine();
    auto rnd = [&] {
        std::vector<double> v(M);
        for (auto& x : v) x = u(gen);
        return v;
    };
    auto base = makeField(0.1, 0.06, rnd(), rnd());
    auto A = makeField(0.1, 0.06, rnd(), rnd()), B = makeField(0.1, 0.06, rnd(), rnd());
    auto run = [&](double eps) {
        auto b = base;
        auto ta = A, tb = B;
        for (int k = 0; k < 5; ++k) {
            ta = linearizedStep(nl, b, ta, eps);
            tb = linearizedStep(nl, b, tb, eps);
            if (k < 4) b = leapfrogStep(nl, b);
        }
        return mscResidual(nl, b, ta, tb);
    };
    CHECK(run(0.0).relative <= 1e-10);
    const double r1 = run(1e-3).maxAbs, r2 = run(5e-4).maxAbs;
    CHECK(r1 > 1e-8);
    CHECK(r1 / r2 == doctest::Approx(2.0).epsilon(0.05));

    auto zero = makeField(0.1, 0.06, std::vector<double>(M, 0.0), std::vector<double>(M, 0.0));
    auto z = linearizedStep(nl, base, zero);
    CHECK(mscResidual(nl, base, z, z).maxAbs == 0.0);
}

TEST_CASE("steady equilibria of the two-harmonic force")
{
    const auto ap = Nonlinearity::appendix();
    const auto e = steadyEquilibria(ap, -pi - 1, -pi + 1);
    REQUIRE(e.size() == 1);
    CHECK(e[0] == doctest::Approx(-2.817204).epsilon(1e-6));
    CHECK(ap.dV(e[0]) == doctest::Approx(0.0).scale(1.0));
    CHECK(ap.derivative(e[0], 1) > 0.0); // saddle of u'' = V'(u)
    const auto all = steadyEquilibria(ap, -pi, pi);
    CHECK(all.size() == 2);
}

TEST_CASE("Lobatto IIIA step is fourth order")
{
    const auto ap = Nonlinearity::appendix();
    std::vector<double> hs, err;
    for (double dx : {0.4, 0.2, 0.1}) {
        const std::array<double, 2> z{-1.0, 0.6};
        const auto a = SteadyStepper(ap, SteadyScheme::LobattoIIIA3, dx).step(z);
        const auto b = SteadyStepper(ap, SteadyScheme::Continuous, dx).step(z);
        hs.push_back(dx);
        err.push_back(std::hypot(a[0] - b[0], a[1] - b[1]));
    }
    const double slope = std::log(err[0] / err[2]) / std::log(hs[0] / hs[2]);
    CHECK(slope >= 4.5);
}

TEST_CASE("leapfrog reversal symmetry of seed classification")
{
    const auto ap = Nonlinearity::appendix();
    const double dx = 0.1;
    std::vector<std::array<double, 2>> seeds{{-0.3244, 0.5}, {0.2, -0.3}, {-1.0, 0.9}, {-2.0, 0.0}};
    std::vector<std::array<double, 2>> mirrored;
    for (const auto& s : seeds) mirrored.push_back({s[0] + dx * s[1], -s[1]});
    const auto a = steadyStatePortrait(ap, SteadyScheme::LeapfrogSpatial, dx, seeds);
    const auto b = steadyStatePortrait(ap, SteadyScheme::LeapfrogSpatial, dx, mirrored);
    for (std::size_t k = 0; k < seeds.size(); ++k) {
        CHECK(std::string(toString(a[k].classification)) == toString(b[k].classification));
        CHECK(std::string(toString(a[k].classification)) == "periodic");
    }
}

TEST_CASE("saddle connections: Lobatto loops back, the flow connects")
{
    const auto ap = Nonlinearity::appendix();
    const double saddle = steadyEquilibria(ap, -pi - 1, -pi + 1).front();
    for (double dx : {0.1, 0.2, 0.4}) {
        const auto sc = saddleConnections(ap, SteadyScheme::LobattoIIIA3, dx, saddle);
        CHECK(sc.heteroclinic.empty());
        REQUIRE_FALSE(sc.homoclinic.empty());
        for (const auto& o : sc.homoclinic) {
            CHECK(std::string(toString(o.classification)) == "homoclinic");
            CHECK(o.endDistance <= 1e-6);
            CHECK(std::hypot(o.samples.front()[0] - saddle, o.samples.front()[1]) <= 1e-6);
        }
    }
    const auto flow = saddleConnections(ap, SteadyScheme::Continuous, 0.1, saddle);
    CHECK(flow.heteroclinic.size() == 2);
    CHECK(flow.homoclinic.empty());
    for (const auto& o : flow.heteroclinic) {
        CHECK(o.endDistance <= 1e-6);
        CHECK(std::abs(o.endEquilibrium - o.startEquilibrium) == doctest::Approx(2 * pi).epsilon(1e-9));
    }
}

TEST_CASE("leapfrog branch shadows the separatrix to second order")
{
    const auto ap = Nonlinearity::appendix();
    const double s0 = steadyEquilibria(ap, -pi - 1, -pi + 1).front();
    const double E = -ap.potential(s0);
    // continuous separatrix: w = sqrt(2 (E + V(u)))
    auto sep = [&](double u) { return std::sqrt(2 * (E + ap.potential(u))); };
    std::vector<double> hs, err;
    for (double dx : {0.1, 0.05, 0.025}) {
        const SteadyStepper st(ap, SteadyScheme::LeapfrogSpatial, dx);
        const auto [lam, v] = st.unstableDirection(s0);
        const double sg = v[1] >= 0 ? 1.0 : -1.0;
        std::array<double, 2> z{s0 + sg * 1e-9 * v[0], sg * 1e-9 * v[1]};
        double worst = 0.0;
        for (int k = 0; k < 200000 && z[0] < s0 + 2 * pi - 1.0; ++k) {
            const auto n = st.step(z);
            const double mid = 0.5 * (z[0] + n[0]); // staggered slope sits at the midpoint
            if (mid > s0 + 1.0 && mid < s0 + 2 * pi - 1.0) worst = std::max(worst, std::abs(z[1] - sep(mid)));
            z = n;
        }
        hs.push_back(dx);
        err.push_back(worst);
    }
    CHECK(fittedSlope(hs, err) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("orbit csv")
{
    SteadyStateOrbit o;
    o.scheme = SteadyScheme::LobattoIIIA3;
    o.dx = 0.1;
    o.samples = {{1.0, 2.0}, {3.0, 4.0}};
    o.classification = OrbitClass::Homoclinic;
    std::stringstream ss;
    writeOrbitCsv(ss, o);
    CHECK(ss.str().find("1,3,4,homoclinic") != std::string::npos);
}
