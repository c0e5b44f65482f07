#pragma once

#include <string>
#include <vector>

namespace svc {

/// Polynomial in one variable, dense coefficient form (coeffs[k] multiplies x^k).
class Polynomial {
public:
    Polynomial() : coeffs_{0.0} {}
    explicit Polynomial(std::vector<double> coeffs);

    double eval(double x) const;
    Polynomial derivative() const;
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial pow(int n) const;

private:
    std::vector<double> coeffs_;  // trailing zeros trimmed, never empty
};

/// Parses "2*x^3 - 0.5*x + 1": real constants, x, +, -, *, parentheses and
/// ^ with nonnegative integer exponents. Throws std::invalid_argument on
/// malformed input.
Polynomial parse_polynomial(const std::string& text);

}  // namespace svc
