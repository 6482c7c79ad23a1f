#include "twave/bea.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <stdexcept>

namespace twave {

ModifiedEquation::ModifiedEquation(Nonlinearity nl, double c, double sigma, double kappa, Order order)
    : nl_(std::move(nl)), c_(c), sigma_(sigma), kappa_(kappa), order_(order),
      mu2_(mu2(c, sigma, kappa)), mu4_(mu4(c, sigma, kappa))
{
    if (!nl_.smooth())
        throw std::invalid_argument("modified equation needs a smooth nonlinearity");
}

double ModifiedEquation::mu2(double c, double sigma, double kappa)
{
    const double c2 = c * c;
    if (std::abs(c2 - 1.0) < 1e-14) throw std::invalid_argument("c^2 = 1 is not allowed");
    return (sigma * sigma - c2 * kappa * kappa) / (12.0 * (c2 - 1.0));
}

double ModifiedEquation::mu4(double c, double sigma, double kappa)
{
    const double c2 = c * c;
    if (std::abs(c2 - 1.0) < 1e-14) throw std::invalid_argument("c^2 = 1 is not allowed");
    const double k2 = kappa * kappa, s2 = sigma * sigma;
    const double num = 3.0 * c2 * c2 * k2 * k2 + 3.0 * s2 * s2 + 2.0 * c2 * (k2 * k2 - 5.0 * k2 * s2 + s2 * s2);
    return num / (720.0 * (c2 - 1.0) * (c2 - 1.0));
}

ModifiedEquation ModifiedEquation::withOrder(Order o) const
{
    ModifiedEquation m = *this;
    m.order_ = o;
    return m;
}

FDerivatives ModifiedEquation::f(double y) const
{
    const double s = -1.0 / (c_ * c_ - 1.0);
    FDerivatives d;
    d.f0 = s * nl_.derivative(y, 0);
    d.f1 = s * nl_.derivative(y, 1);
    d.f2 = s * nl_.derivative(y, 2);
    d.f3 = s * nl_.derivative(y, 3);
    d.f4 = s * nl_.derivative(y, 4);
    return d;
}

double ModifiedEquation::f3(double y, double v) const
{
    const auto d = f(y);
    return mu2_ * (d.f2 * v * v + d.f1 * d.f0);
}

double ModifiedEquation::f5(double y, double v) const
{
    const auto d = f(y);
    const double v2 = v * v;
    const double g3 = mu2_ * (d.f2 * v2 + d.f1 * d.f0);
    return mu2_ * d.f1 * g3
        + mu4_ * (d.f1 * d.f1 * d.f0 + 3.0 * d.f2 * d.f0 * d.f0 + 5.0 * d.f2 * v2 * d.f1
                  + 6.0 * d.f3 * v2 * d.f0 + d.f4 * v2 * v2);
}

double modifiedField(const ModifiedEquation& me, double y, double ydot)
{
    double acc = me.f(y).f0;
    if (me.order() != Order::O2) acc += me.f3(y, ydot);
    if (me.order() == Order::O6) acc += me.f5(y, ydot);
    return acc;
}

std::pair<double, double> dispersionConsistency(const ModifiedEquation& me, double s)
{
    const double s2 = s * s;
    const double truncated = -s2 * (1.0 - me.mu2() * s2 + me.mu4() * s2 * s2);
    if (s == 0.0) return {0.0, 0.0};
    const double c2 = me.c() * me.c();
    const double a = std::sin(0.5 * me.kappa() * s), b = std::sin(0.5 * me.sigma() * s);
    // symbol of L: [-(2c^2/k^2)(1 - cos ks) + (2/s^2)(1 - cos ss)] / (c^2 - 1)
    const double l = (-(4.0 * c2 / (me.kappa() * me.kappa())) * a * a + (4.0 / (me.sigma() * me.sigma())) * b * b)
        / (c2 - 1.0);
    return {truncated, s2 * s2 / l};
}

// ---------------------------------------------------------------------------

ModifiedHamiltonianSystem::ModifiedHamiltonianSystem(ModifiedEquation me) : me_(std::move(me)) {}

double ModifiedHamiltonianSystem::H(double y, double p) const
{
    return 0.5 * p * p + me_.nonlinearity().potential(y) / (me_.c() * me_.c() - 1.0);
}

double ModifiedHamiltonianSystem::H3(double y, double p) const
{
    const auto d = me_.f(y);
    return 0.5 * me_.mu2() * d.f0 * d.f0 - me_.mu2() * d.f1 * p * p;
}

double ModifiedHamiltonianSystem::H5(double y, double p) const
{
    const auto d = me_.f(y);
    const double m2 = me_.mu2(), m4 = me_.mu4();
    const double a = 4.5 * m2 * m2 - 1.5 * m4;
    const double p2 = p * p;
    return m4 * d.f0 * d.f0 * d.f1 + a * d.f1 * d.f1 * p2 - 2.0 * m4 * d.f0 * d.f2 * p2
        + (5.0 / 3.0) * m4 * p2 * p2 * d.f3;
}

double ModifiedHamiltonianSystem::K3(double y, double) const
{
    return 2.0 * me_.mu2() * me_.f(y).f1;
}

double ModifiedHamiltonianSystem::K5(double y, double p) const
{
    const auto d = me_.f(y);
    const double m2 = me_.mu2(), m4 = me_.mu4();
    return -(m2 * m2 - 3.0 * m4) * d.f1 * d.f1 + 4.0 * m4 * d.f0 * d.f2 - 4.0 * m4 * p * p * d.f3;
}

double ModifiedHamiltonianSystem::Htilde(double y, double p) const
{
    double h = H(y, p);
    if (me_.order() != Order::O2) h += H3(y, p);
    if (me_.order() == Order::O6) h += H5(y, p);
    return h;
}

double ModifiedHamiltonianSystem::Ktilde(double y, double p) const
{
    double k = 1.0;
    if (me_.order() != Order::O2) k += K3(y, p);
    if (me_.order() == Order::O6) k += K5(y, p);
    return k;
}

ModifiedHamiltonianSystem::Parts ModifiedHamiltonianSystem::parts(double y, double p) const
{
    const auto d = me_.f(y);
    const double m2 = me_.mu2(), m4 = me_.mu4();
    const bool o4 = me_.order() != Order::O2;
    const bool o6 = me_.order() == Order::O6;
    const double p2 = p * p;

    Parts r{1.0, 0.0, 0.0, p, -d.f0, 0.0, 1.0};
    if (o4) {
        r.K += 2.0 * m2 * d.f1;
        r.Ky += 2.0 * m2 * d.f2;
        r.Hp += -2.0 * m2 * d.f1 * p;
        r.Hy += m2 * d.f0 * d.f1 - m2 * d.f2 * p2;
        r.Hpy += -2.0 * m2 * d.f2 * p;
        r.Hpp += -2.0 * m2 * d.f1;
    }
    if (o6) {
        const double a = 4.5 * m2 * m2 - 1.5 * m4;
        const double b = m2 * m2 - 3.0 * m4;
        r.K += -b * d.f1 * d.f1 + 4.0 * m4 * d.f0 * d.f2 - 4.0 * m4 * p2 * d.f3;
        r.Ky += -2.0 * b * d.f1 * d.f2 + 4.0 * m4 * (d.f1 * d.f2 + d.f0 * d.f3) - 4.0 * m4 * p2 * d.f4;
        r.Kp += -8.0 * m4 * p * d.f3;
        r.Hp += 2.0 * a * d.f1 * d.f1 * p - 4.0 * m4 * d.f0 * d.f2 * p + (20.0 / 3.0) * m4 * p2 * p * d.f3;
        r.Hy += m4 * (2.0 * d.f0 * d.f1 * d.f1 + d.f0 * d.f0 * d.f2) + 2.0 * a * d.f1 * d.f2 * p2
            - 2.0 * m4 * (d.f1 * d.f2 + d.f0 * d.f3) * p2 + (5.0 / 3.0) * m4 * p2 * p2 * d.f4;
        r.Hpy += 4.0 * a * d.f1 * d.f2 * p - 4.0 * m4 * (d.f1 * d.f2 + d.f0 * d.f3) * p
            + (20.0 / 3.0) * m4 * p2 * p * d.f4;
        r.Hpp += 2.0 * a * d.f1 * d.f1 - 4.0 * m4 * d.f0 * d.f2 + 20.0 * m4 * p2 * d.f3;
    }
    return r;
}

std::array<double, 2> ModifiedHamiltonianSystem::field(double y, double p) const
{
    const auto r = parts(y, p);
    return {r.K * r.Hp, -r.K * r.Hy};
}

double ModifiedHamiltonianSystem::momentum(double y, double ydot) const
{
    double p = ydot;
    for (int it = 0; it < 50; ++it) {
        const auto r = parts(y, p);
        const double g = r.K * r.Hp - ydot;
        const double dg = r.Kp * r.Hp + r.K * r.Hpp;
        const double step = g / dg;
        p -= step;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(p))) break;
    }
    return p;
}

double ModifiedHamiltonianSystem::secondDerivative(double y, double ydot) const
{
    const double p = momentum(y, ydot);
    const auto r = parts(y, p);
    const double yd = r.K * r.Hp;
    const double pd = -r.K * r.Hy;
    const double Gy = r.Ky * r.Hp + r.K * r.Hpy;
    const double Gp = r.Kp * r.Hp + r.K * r.Hpp;
    return Gy * yd + Gp * pd;
}

// ---------------------------------------------------------------------------

Trajectory integrateModified(const ModifiedEquation& me, double y0, double ydot0, const std::vector<double>& times)
{
    namespace odeint = boost::numeric::odeint;
    using State = std::array<double, 2>;
    Trajectory out;
    if (times.empty()) return out;
    auto rhs = [&me](const State& x, State& dx, double) {
        dx[0] = x[1];
        dx[1] = modifiedField(me, x[0], x[1]);
    };
    auto stepper = odeint::make_controlled(1e-12, 1e-12, odeint::runge_kutta_fehlberg78<State>());
    State x{y0, ydot0};
    out.t.reserve(times.size());
    out.y.reserve(times.size());
    out.ydot.reserve(times.size());
    auto observer = [&out](const State& s, double t) {
        if (!std::isfinite(s[0]) || !std::isfinite(s[1]))
            throw std::runtime_error("modified equation integration produced non-finite state");
        out.t.push_back(t);
        out.y.push_back(s[0]);
        out.ydot.push_back(s[1]);
    };
    if (times.size() == 1) {
        observer(x, times.front());
        return out;
    }
    const double span = times.back() - times.front();
    const double dt0 = 1e-3 * (span == 0.0 ? 1.0 : span);
    odeint::integrate_times(stepper, rhs, x, times.begin(), times.end(), dt0, observer,
                            odeint::max_step_checker(100000));
    return out;
}

Trajectory integrateModified(const ModifiedEquation& me, double y0, double ydot0, double T, int samples)
{
    std::vector<double> t(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) t[static_cast<std::size_t>(k)] = T * k / std::max(samples - 1, 1);
    return integrateModified(me, y0, ydot0, t);
}

} // namespace twave
