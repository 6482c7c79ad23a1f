#include "twave/pdesim.hpp"

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

namespace twave {

const char* toString(SteadyScheme s)
{
    switch (s) {
    case SteadyScheme::LeapfrogSpatial: return "leapfrog";
    case SteadyScheme::LobattoIIIA3: return "lobatto3a";
    case SteadyScheme::Continuous: return "continuous";
    }
    return "?";
}

const char* toString(OrbitClass c)
{
    switch (c) {
    case OrbitClass::Heteroclinic: return "heteroclinic";
    case OrbitClass::Homoclinic: return "homoclinic";
    case OrbitClass::Periodic: return "periodic";
    case OrbitClass::Unbounded: return "unbounded";
    }
    return "?";
}

std::vector<double> steadyEquilibria(const Nonlinearity& nl, double lo, double hi)
{
    std::vector<double> roots;
    const int K = std::max(8, static_cast<int>((hi - lo) / 0.01));
    double x0 = lo, f0 = nl.dV(lo);
    for (int k = 1; k <= K; ++k) {
        const double x1 = lo + (hi - lo) * k / K, f1 = nl.dV(x1);
        if (f0 == 0.0) {
            roots.push_back(x0);
        } else if (f0 * f1 < 0.0) {
            double a = x0, b = x1, fa = f0;
            for (int it = 0; it < 200 && b - a > 0.0; ++it) {
                const double m = 0.5 * (a + b);
                if (m == a || m == b) break;
                const double fm = nl.dV(m);
                if ((fm < 0.0) == (fa < 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

// ---------------------------------------------------------------------------

SteadyStepper::SteadyStepper(Nonlinearity nl, SteadyScheme scheme, double dx)
    : nl_(std::move(nl)), scheme_(scheme), dx_(dx)
{
    if (!nl_.smooth()) throw std::invalid_argument("steady-state study needs a smooth nonlinearity");
    if (!(dx > 0.0)) throw std::invalid_argument("dx must be positive");
}

std::array<double, 2> SteadyStepper::step(const std::array<double, 2>& z) const
{
    switch (scheme_) {
    case SteadyScheme::LeapfrogSpatial: {
        // (u_i, (u_{i+1}-u_i)/dx) -> next; equivalent to the 3-term recurrence
        const double u1 = z[0] + dx_ * z[1];
        return {u1, z[1] + dx_ * nl_.dV(u1)};
    }
    case SteadyScheme::LobattoIIIA3:
        return lobatto(z);
    case SteadyScheme::Continuous:
        return flow(z);
    }
    return z;
}

std::array<double, 2> SteadyStepper::lobatto(const std::array<double, 2>& z) const
{
    static const double A[3][3] = {{0.0, 0.0, 0.0}, {5.0 / 24.0, 1.0 / 3.0, -1.0 / 24.0}, {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0}};
    static const double b[3] = {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0};
    const double h = dx_;
    // stage slopes K_i = F(z + h sum_j A_ij K_j), F(u, w) = (w, V'(u))
    Eigen::Matrix<double, 6, 1> K;
    for (int i = 0; i < 3; ++i) {
        K(2 * i) = z[1];
        K(2 * i + 1) = nl_.dV(z[0]);
    }
    bool done = false;
    for (int it = 0; it < 60 && !done; ++it) {
        Eigen::Matrix<double, 6, 1> R;
        Eigen::Matrix<double, 6, 6> J = Eigen::Matrix<double, 6, 6>::Identity();
        for (int i = 0; i < 3; ++i) {
            double zu = z[0], zw = z[1];
            for (int j = 0; j < 3; ++j) {
                zu += h * A[i][j] * K(2 * j);
                zw += h * A[i][j] * K(2 * j + 1);
            }
            R(2 * i) = K(2 * i) - zw;
            R(2 * i + 1) = K(2 * i + 1) - nl_.dV(zu);
            const double gp = nl_.derivative(zu, 1);
            for (int j = 0; j < 3; ++j) {
                J(2 * i, 2 * j + 1) -= h * A[i][j];
                J(2 * i + 1, 2 * j) -= h * A[i][j] * gp;
            }
        }
        const Eigen::Matrix<double, 6, 1> dK = J.partialPivLu().solve(R);
        K -= dK;
        if (dK.cwiseAbs().maxCoeff() <= 1e-15 * (1.0 + K.cwiseAbs().maxCoeff())) done = true;
        else if (it > 3 && dK.cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + K.cwiseAbs().maxCoeff())) {
            // one more pass to settle at round-off
            continue;
        }
    }
    if (!done) {
        // converged to within round-off noise is acceptable; genuine failure is not
        Eigen::Matrix<double, 6, 1> R;
        for (int i = 0; i < 3; ++i) {
            double zu = z[0], zw = z[1];
            for (int j = 0; j < 3; ++j) {
                zu += h * A[i][j] * K(2 * j);
                zw += h * A[i][j] * K(2 * j + 1);
            }
            R(2 * i) = K(2 * i) - zw;
            R(2 * i + 1) = K(2 * i + 1) - nl_.dV(zu);
        }
        if (!(R.cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + K.cwiseAbs().maxCoeff())))
            throw std::runtime_error("Lobatto IIIA stage equations did not converge");
    }
    std::array<double, 2> out = z;
    for (int i = 0; i < 3; ++i) {
        out[0] += h * b[i] * K(2 * i);
        out[1] += h * b[i] * K(2 * i + 1);
    }
    return out;
}

std::array<double, 2> SteadyStepper::flow(const std::array<double, 2>& z) const
{
    namespace odeint = boost::numeric::odeint;
    using State = std::array<double, 2>;
    auto rhs = [this](const State& x, State& dx, double) {
        dx[0] = x[1];
        dx[1] = nl_.dV(x[0]);
    };
    State x = z;
    auto stepper = odeint::make_controlled(1e-14, 1e-14, odeint::runge_kutta_fehlberg78<State>());
    odeint::integrate_adaptive(stepper, rhs, x, 0.0, dx_, 0.25 * dx_);
    // project back onto the level set of E = w^2/2 - V(u)
    const double E = 0.5 * z[1] * z[1] - nl_.potential(z[0]);
    const double w2 = 2.0 * (E + nl_.potential(x[0]));
    if (w2 > 0.0 && x[1] != 0.0) x[1] = std::copysign(std::sqrt(w2), x[1]);
    return x;
}

std::pair<double, std::array<double, 2>> SteadyStepper::unstableDirection(double saddle) const
{
    const double e = 1e-6;
    Eigen::Matrix2d J;
    for (int k = 0; k < 2; ++k) {
        std::array<double, 2> zp{saddle, 0.0}, zm{saddle, 0.0};
        zp[static_cast<std::size_t>(k)] += e;
        zm[static_cast<std::size_t>(k)] -= e;
        const auto fp = step(zp), fm = step(zm);
        J(0, k) = (fp[0] - fm[0]) / (2.0 * e);
        J(1, k) = (fp[1] - fm[1]) / (2.0 * e);
    }
    Eigen::EigenSolver<Eigen::Matrix2d> es(J);
    int best = -1;
    double lam = 0.0;
    for (int k = 0; k < 2; ++k) {
        const auto ev = es.eigenvalues()(k);
        if (std::abs(ev.imag()) < 1e-12 && ev.real() > lam) {
            lam = ev.real();
            best = k;
        }
    }
    if (best < 0 || !(lam > 1.0))
        throw std::domain_error("equilibrium is not a saddle of the step map");
    Eigen::Vector2d v = es.eigenvectors().col(best).real();
    v /= v.norm();
    if (v(0) < 0.0) v = -v;
    return {lam, {v(0), v(1)}};
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kProximity = 1e-6;
constexpr double kExitRadius = 0.1;

double dist(const std::array<double, 2>& z, double e)
{
    return std::hypot(z[0] - e, z[1]);
}

double nearestOf(const std::vector<double>& eqs, double u)
{
    double best = std::numeric_limits<double>::quiet_NaN(), bd = std::numeric_limits<double>::infinity();
    for (double e : eqs)
        if (std::abs(e - u) < bd) {
            bd = std::abs(e - u);
            best = e;
        }
    return best;
}

double shootingLength(const Nonlinearity& nl, double saddle)
{
    return 40.0 / std::sqrt(std::abs(nl.derivative(saddle, 1)));
}

// Generic classification of one seed: integrate until the orbit has left the
// 0.1-ball of its seed, then for the shooting interval; the orbit ends at its
// first entry into a 1e-6 ball of an equilibrium.
SteadyStateOrbit classifySeed(const SteadyStepper& st, const std::vector<double>& eqs,
                              const std::array<double, 2>& seed, double interval)
{
    SteadyStateOrbit o;
    o.scheme = st.scheme();
    o.dx = st.dx();
    o.samples.push_back(seed);
    const double start = nearestOf(eqs, seed[0]);
    const bool startsAtEq = dist(seed, start) <= kProximity;
    o.startEquilibrium = startsAtEq ? start : std::numeric_limits<double>::quiet_NaN();
    const long maxSteps = static_cast<long>(std::ceil(interval / st.dx()));
    const long escapeCap = 200000;
    std::array<double, 2> z = seed;
    bool exited = false;
    long after = 0;
    for (long k = 0; k < escapeCap + maxSteps; ++k) {
        z = st.step(z);
        o.samples.push_back(z);
        if (!std::isfinite(z[0]) || !std::isfinite(z[1]) || std::abs(z[0] - seed[0]) > 4.0 * std::numbers::pi) {
            o.classification = OrbitClass::Unbounded;
            o.endEquilibrium = std::numeric_limits<double>::quiet_NaN();
            o.endDistance = std::numeric_limits<double>::infinity();
            return o;
        }
        if (!exited) {
            if (dist(z, seed[0]) > kExitRadius || std::hypot(z[0] - seed[0], z[1] - seed[1]) > kExitRadius) exited = true;
            else continue;
        }
        ++after;
        const double e = nearestOf(eqs, z[0]);
        if (dist(z, e) <= kProximity) {
            o.endEquilibrium = e;
            o.endDistance = dist(z, e);
            o.classification = (startsAtEq && e == start) ? OrbitClass::Homoclinic : OrbitClass::Heteroclinic;
            if (!startsAtEq) o.classification = OrbitClass::Periodic;
            return o;
        }
        if (after >= maxSteps) break;
    }
    o.endEquilibrium = nearestOf(eqs, z[0]);
    o.endDistance = dist(z, o.endEquilibrium);
    o.classification = OrbitClass::Periodic;
    return o;
}

enum class Fate { Pass, Turn, Undecided };

struct BranchOrbit {
    std::vector<std::array<double, 2>> samples;
    Fate fate = Fate::Undecided;
    std::size_t turnIndex = 0; // first sample moving back towards the start (Fate::Turn)
    double closestTarget = std::numeric_limits<double>::infinity();
    std::size_t closestTargetIndex = 0;
};

// Follows one unstable branch until it either passes the neighbouring saddle or
// reverses direction short of it.
BranchOrbit followBranch(const SteadyStepper& st, double s0, double s1, int dir, std::array<double, 2> seed,
                         long maxSteps)
{
    BranchOrbit b;
    b.samples.push_back(seed);
    std::array<double, 2> z = seed;
    bool exited = false;
    for (long k = 0; k < maxSteps; ++k) {
        z = st.step(z);
        b.samples.push_back(z);
        if (!std::isfinite(z[0]) || !std::isfinite(z[1])) break;
        if (!exited) {
            if (dist(z, s0) > kExitRadius) exited = true;
            else continue;
        }
        const double d = dist(z, s1);
        if (d < b.closestTarget) {
            b.closestTarget = d;
            b.closestTargetIndex = b.samples.size() - 1;
        }
        if (dir * (z[0] - s1) > 0.0) {
            b.fate = Fate::Pass;
            return b;
        }
        if (dir * z[1] < 0.0) {
            b.fate = Fate::Turn;
            b.turnIndex = b.samples.size() - 1;
            return b;
        }
    }
    return b;
}

// Reversing symmetry R of the step map, R F R = F^{-1}, with Fix(R) = {u' = 0}.
// The staggered leapfrog velocity makes its reversor a shear.
std::array<double, 2> reverse(SteadyScheme s, double dx, const std::array<double, 2>& z)
{
    if (s == SteadyScheme::LeapfrogSpatial) return {z[0] + dx * z[1], -z[1]};
    return {z[0], -z[1]};
}

SteadyStateOrbit truncated(const SteadyStepper& st, const BranchOrbit& b, std::size_t last, double s0, double end,
                           OrbitClass cls)
{
    SteadyStateOrbit o;
    o.scheme = st.scheme();
    o.dx = st.dx();
    o.samples.assign(b.samples.begin(), b.samples.begin() + static_cast<long>(last) + 1);
    o.startEquilibrium = s0;
    o.endEquilibrium = end;
    o.endDistance = dist(o.samples.back(), end);
    o.classification = cls;
    return o;
}

// An orbit through a point of Fix(R) is its own mirror image, so the branch
// z_0..z_n with z_n on u' = 0 closes as z_{n+k} = R z_{n-k} back onto the saddle.
SteadyStateOrbit mirrored(const SteadyStepper& st, const BranchOrbit& b, double s0)
{
    SteadyStateOrbit o;
    o.scheme = st.scheme();
    o.dx = st.dx();
    const std::size_t n = b.turnIndex - 1;
    o.samples.assign(b.samples.begin(), b.samples.begin() + static_cast<long>(n) + 1);
    for (std::size_t k = 1; k <= n; ++k) o.samples.push_back(reverse(st.scheme(), st.dx(), b.samples[n - k]));
    o.startEquilibrium = s0;
    o.endEquilibrium = s0;
    o.endDistance = dist(o.samples.back(), s0);
    o.classification = OrbitClass::Homoclinic;
    return o;
}

} // namespace

std::vector<SteadyStateOrbit> steadyStatePortrait(const Nonlinearity& nl, SteadyScheme scheme, double dx,
                                                  const std::vector<std::array<double, 2>>& seeds)
{
    const SteadyStepper st(nl, scheme, dx);
    std::vector<SteadyStateOrbit> out;
    for (const auto& s : seeds) {
        const auto eqs = steadyEquilibria(nl, s[0] - 5.0 * std::numbers::pi, s[0] + 5.0 * std::numbers::pi);
        double saddle = std::numeric_limits<double>::quiet_NaN();
        for (double e : eqs)
            if (nl.derivative(e, 1) > 0.0 && (std::isnan(saddle) || std::abs(e - s[0]) < std::abs(saddle - s[0]))) saddle = e;
        const double L = std::isnan(saddle) ? 40.0 : shootingLength(nl, saddle);
        out.push_back(classifySeed(st, eqs, s, L));
    }
    return out;
}

SaddleConnections saddleConnections(const Nonlinearity& nl, SteadyScheme scheme, double dx, double saddle)
{
    const SteadyStepper st(nl, scheme, dx);
    if (!(nl.derivative(saddle, 1) > 0.0))
        throw std::domain_error("saddleConnections: equilibrium is not a saddle of u'' = V'(u)");
    SaddleConnections res;
    res.saddle = saddle;
    const auto [lam, v] = st.unstableDirection(saddle);
    res.multiplier = lam;
    const double L = shootingLength(nl, saddle);
    const double s0 = 1e-9;
    // escape from s0 plus two shooting intervals
    const long maxSteps = static_cast<long>(std::ceil((std::log(kExitRadius / s0) / std::log(lam)) + 2.0 * L / dx));
    const int K = scheme == SteadyScheme::Continuous ? 1 : 24;

    for (int dir : {1, -1}) {
        const auto eqs = steadyEquilibria(nl, std::min(saddle + dir * 0.5, saddle + dir * (2.0 * std::numbers::pi + 0.5)),
                                          std::max(saddle + dir * 0.5, saddle + dir * (2.0 * std::numbers::pi + 0.5)));
        double target = std::numeric_limits<double>::quiet_NaN();
        for (double e : eqs)
            if (nl.derivative(e, 1) > 0.0 && (std::isnan(target) || std::abs(e - saddle) < std::abs(target - saddle)))
                target = e;
        if (std::isnan(target)) continue;

        const double sdir = v[1] * dir >= 0.0 ? 1.0 : -1.0; // branch leaving with velocity sign dir
        auto run = [&](double logs) {
            const double s = std::exp(logs) * sdir;
            return followBranch(st, saddle, target, dir, {saddle + s * v[0], s * v[1]}, maxSteps);
        };

        const double l0 = std::log(s0), l1 = l0 + std::log(lam);
        std::vector<double> ls;
        std::vector<BranchOrbit> orbits;
        for (int k = 0; k <= K; ++k) {
            ls.push_back(l0 + (l1 - l0) * k / K);
            orbits.push_back(run(ls.back()));
        }
        res.seedsScanned += K + 1;

        if (scheme == SteadyScheme::Continuous) {
            // The projected flow keeps the separatrix energy exactly, and that level
            // set contains no closed loop through the saddle, so only the approach
            // to the neighbouring saddle is tested.
            const auto& b = orbits.front();
            if (b.closestTarget <= kProximity)
                res.heteroclinic.push_back(truncated(st, b, b.closestTargetIndex, saddle, target, OrbitClass::Heteroclinic));
            continue;
        }

        // bisection on a predicate of the seed, true at a and false at c
        auto bisect = [&](double a, double c, auto pred) {
            BranchOrbit best = run(a);
            for (int it = 0; it < 100 && c - a > 4e-16 * std::abs(a); ++it) {
                const double m = 0.5 * (a + c);
                BranchOrbit om = run(m);
                if (pred(om)) {
                    a = m;
                    best = std::move(om);
                } else {
                    c = m;
                }
            }
            return best;
        };

        for (int k = 0; k < K; ++k) {
            const auto& A = orbits[static_cast<std::size_t>(k)];
            const auto& B = orbits[static_cast<std::size_t>(k + 1)];
            const double la = ls[static_cast<std::size_t>(k)], lb = ls[static_cast<std::size_t>(k + 1)];
            // connection to the neighbouring saddle separates passing and turning seeds
            if (A.fate != Fate::Undecided && B.fate != Fate::Undecided && A.fate != B.fate) {
                const Fate fa = A.fate;
                auto o = bisect(la, lb, [fa](const BranchOrbit& b) { return b.fate == fa; });
                if (o.closestTarget <= kProximity)
                    res.heteroclinic.push_back(truncated(st, o, o.closestTargetIndex, saddle, target, OrbitClass::Heteroclinic));
            }
            // the turning step moves by one index across a fundamental domain; at the
            // switch the orbit meets u' = 0 and is symmetric
            if (A.fate == Fate::Turn && B.fate == Fate::Turn && A.turnIndex != B.turnIndex) {
                const std::size_t n = A.turnIndex;
                auto o = bisect(la, lb, [n](const BranchOrbit& b) { return b.fate == Fate::Turn && b.turnIndex == n; });
                const auto& zt = o.samples[o.turnIndex - 1];
                const auto back = reverse(scheme, dx, o.samples[o.turnIndex - 2]);
                const auto fwd = st.step(zt);
                const double defect = std::hypot(fwd[0] - back[0], fwd[1] - back[1]);
                auto orb = mirrored(st, o, saddle);
                if (defect <= 1e-8 && orb.endDistance <= kProximity) res.homoclinic.push_back(std::move(orb));
            }
        }
    }
    return res;
}

void writeOrbitCsv(std::ostream& os, const SteadyStateOrbit& orbit)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, "# scheme=%s\n# dx=%.17g\nindex,u,du,classification\n", toString(orbit.scheme), orbit.dx);
    os << buf;
    for (std::size_t k = 0; k < orbit.samples.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%s\n", k, orbit.samples[k][0], orbit.samples[k][1],
                      toString(orbit.classification));
        os << buf;
    }
}

} // namespace twave
