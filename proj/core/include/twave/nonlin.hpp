#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <string>

namespace twave {

enum class NlKind { McKean, Sawtooth, Sine, AppendixForce, CustomSmooth };

// User supplied smooth family. dV[k] is the k-th derivative of V', k = 0..4,
// so dV[0] is V' itself. V is optional; when empty the potential is not available.
struct CustomFamily {
    std::function<double(double)> V;
    std::array<std::function<double(double)>, 5> dV;
};

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class Nonlinearity {
public:
    static Nonlinearity mckean(double a);
    static Nonlinearity sawtooth();
    static Nonlinearity sine();
    static Nonlinearity appendix();
    static Nonlinearity custom(CustomFamily family, std::string label = "custom");

    NlKind kind() const { return kind_; }
    double a() const { return a_; }
    bool smooth() const;
    std::string name() const;

    // V with V(0) = 0.
    double potential(double u) const;
    // V'(u). For McKean uses h(0) = 1.
    double dV(double u) const;
    // d^order V' / du^order, order in 0..4. Smooth kinds only for order >= 1.
    double derivative(double u, int order) const;

private:
    Nonlinearity() = default;
    void checkDomain(double u) const;

    NlKind kind_ = NlKind::Sine;
    double a_ = 0.0;
    CustomFamily custom_;
    std::string label_;
};

// -V'(u)
double evalForce(const Nonlinearity& nl, double u);
// d^order V'/du^order for order in 1..4
double evalDerivatives(const Nonlinearity& nl, double u, int order);

// Parses "sine", "appendix", "sawtooth", "mckean" (uses a).
Nonlinearity nonlinearityFromName(const std::string& name, double a = 0.5);

} // namespace twave
