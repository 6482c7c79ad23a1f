#include "twave/nonlin.hpp"

#include <cmath>
#include <utility>

namespace twave {

Nonlinearity Nonlinearity::mckean(double a)
{
    if (!(a > 0.0 && a < 1.0))
        throw std::invalid_argument("McKean threshold a must lie in (0,1)");
    Nonlinearity nl;
    nl.kind_ = NlKind::McKean;
    nl.a_ = a;
    return nl;
}

Nonlinearity Nonlinearity::sawtooth()
{
    Nonlinearity nl;
    nl.kind_ = NlKind::Sawtooth;
    return nl;
}

Nonlinearity Nonlinearity::sine()
{
    Nonlinearity nl;
    nl.kind_ = NlKind::Sine;
    return nl;
}

Nonlinearity Nonlinearity::appendix()
{
    Nonlinearity nl;
    nl.kind_ = NlKind::AppendixForce;
    return nl;
}

Nonlinearity Nonlinearity::custom(CustomFamily family, std::string label)
{
    for (const auto& f : family.dV)
        if (!f)
            throw std::invalid_argument("custom nonlinearity needs V' and four derivatives");
    Nonlinearity nl;
    nl.kind_ = NlKind::CustomSmooth;
    nl.custom_ = std::move(family);
    nl.label_ = std::move(label);
    return nl;
}

bool Nonlinearity::smooth() const
{
    return kind_ == NlKind::Sine || kind_ == NlKind::AppendixForce || kind_ == NlKind::CustomSmooth;
}

std::string Nonlinearity::name() const
{
    switch (kind_) {
    case NlKind::McKean: return "mckean";
    case NlKind::Sawtooth: return "sawtooth";
    case NlKind::Sine: return "sine";
    case NlKind::AppendixForce: return "appendix";
    case NlKind::CustomSmooth: return label_;
    }
    return "?";
}

void Nonlinearity::checkDomain(double u) const
{
    if (kind_ == NlKind::Sawtooth && !(u > -2.0 && u < 2.0))
        throw DomainError("sawtooth nonlinearity evaluated outside (-2,2)");
}

double Nonlinearity::potential(double u) const
{
    checkDomain(u);
    switch (kind_) {
    case NlKind::McKean:
        return 0.5 * u * u - std::max(u - a_, 0.0);
    case NlKind::Sawtooth:
        // -V' = 2 - u above 1, u in the middle, -2 - u below -1
        if (u > 1.0) return 0.5 * u * u - 2.0 * u + 1.0;
        if (u < -1.0) return 0.5 * u * u + 2.0 * u + 1.0;
        return -0.5 * u * u;
    case NlKind::Sine:
        return 1.0 - std::cos(u);
    case NlKind::AppendixForce:
        return std::cos(u) - 0.2 * std::sin(2.0 * u) - 1.0;
    case NlKind::CustomSmooth:
        if (!custom_.V)
            throw std::logic_error("custom nonlinearity has no potential");
        return custom_.V(u) - custom_.V(0.0);
    }
    return 0.0;
}

double Nonlinearity::dV(double u) const
{
    checkDomain(u);
    switch (kind_) {
    case NlKind::McKean:
        return u - (u - a_ >= 0.0 ? 1.0 : 0.0);
    case NlKind::Sawtooth:
        if (u > 1.0) return u - 2.0;
        if (u < -1.0) return u + 2.0;
        return -u;
    case NlKind::Sine:
        return std::sin(u);
    case NlKind::AppendixForce:
        return -std::sin(u) - 0.4 * std::cos(2.0 * u);
    case NlKind::CustomSmooth:
        return custom_.dV[0](u);
    }
    return 0.0;
}

double Nonlinearity::derivative(double u, int order) const
{
    if (order < 0 || order > 4)
        throw std::invalid_argument("derivative order must be in 0..4");
    if (order == 0)
        return dV(u);
    if (!smooth())
        throw std::invalid_argument("higher derivatives requested for a non-smooth nonlinearity");
    switch (kind_) {
    case NlKind::Sine:
        switch (order) {
        case 1: return std::cos(u);
        case 2: return -std::sin(u);
        case 3: return -std::cos(u);
        default: return std::sin(u);
        }
    case NlKind::AppendixForce: {
        const double s = std::sin(u), c = std::cos(u);
        const double s2 = std::sin(2.0 * u), c2 = std::cos(2.0 * u);
        switch (order) {
        case 1: return -c + 0.8 * s2;
        case 2: return s + 1.6 * c2;
        case 3: return c - 3.2 * s2;
        default: return -s - 6.4 * c2;
        }
    }
    case NlKind::CustomSmooth:
        return custom_.dV[order](u);
    default:
        break;
    }
    return 0.0;
}

double evalForce(const Nonlinearity& nl, double u)
{
    return -nl.dV(u);
}

double evalDerivatives(const Nonlinearity& nl, double u, int order)
{
    if (order < 1 || order > 4)
        throw std::invalid_argument("evalDerivatives: order must be in 1..4");
    return nl.derivative(u, order);
}

Nonlinearity nonlinearityFromName(const std::string& name, double a)
{
    if (name == "sine") return Nonlinearity::sine();
    if (name == "appendix") return Nonlinearity::appendix();
    if (name == "sawtooth") return Nonlinearity::sawtooth();
    if (name == "mckean") return Nonlinearity::mckean(a);
    throw std::invalid_argument("unknown nonlinearity '" + name + "'");
}

} // namespace twave
