#pragma once

#include <string>
#include <utility>
#include <vector>

#include "derivlab/rational.hpp"

namespace derivlab {

// Dense univariate polynomial over Q, coefficients lowest degree first.
// Normal form: no trailing zero coefficients; the zero polynomial has an
// empty coefficient list and degree -1.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { normalize(); }

    static Poly zero() { return Poly(); }
    static Poly constant(const Rational& r);
    static Poly monomial(const Rational& coeff, size_t degree);
    static Poly variable() { return monomial(Rational(1), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
    bool is_constant() const { return c_.size() <= 1; }

    Rational coeff(size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    const Rational& leading() const;
    const std::vector<Rational>& coeffs() const { return c_; }

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const Rational& r) const;

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return c_ != o.c_; }

    // Euclidean division; divisor must be nonzero.
    std::pair<Poly, Poly> divmod(const Poly& divisor) const;

    Poly derivative() const;
    Poly monic() const;
    Poly pow(unsigned k) const;
    Rational eval(const Rational& x) const;

    std::string to_string(const std::string& var) const;

private:
    void normalize();
    std::vector<Rational> c_;
};

// Monic gcd; gcd(0, 0) = 0.
Poly poly_gcd(Poly a, Poly b);

// Monic lcm.
Poly poly_lcm(const Poly& a, const Poly& b);

// All rational roots of p (p nonzero), each verified by evaluation.
// Throws UncertifiedIrreducibility when the integerized extreme coefficients
// are too large for divisor enumeration.
std::vector<Rational> rational_roots(const Poly& p);

} // namespace derivlab
