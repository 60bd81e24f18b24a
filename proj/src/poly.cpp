#include "derivlab/poly.hpp"

#include <algorithm>

#include "derivlab/error.hpp"

namespace derivlab {

void Poly::normalize() {
    while (!c_.empty() && c_.back().is_zero())
        c_.pop_back();
}

Poly Poly::constant(const Rational& r) {
    Poly p;
    if (!r.is_zero())
        p.c_.push_back(r);
    return p;
}

Poly Poly::monomial(const Rational& coeff, size_t degree) {
    Poly p;
    if (!coeff.is_zero()) {
        p.c_.assign(degree + 1, Rational(0));
        p.c_[degree] = coeff;
    }
    return p;
}

const Rational& Poly::leading() const {
    if (c_.empty())
        fail(Errc::DivisionByZero, "leading coefficient of zero polynomial");
    return c_.back();
}

Poly Poly::operator-() const {
    Poly r(*this);
    for (auto& x : r.c_)
        x = -x;
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < r.c_.size(); ++i)
        r.c_[i] = coeff(i) + o.coeff(i);
    r.normalize();
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    return *this + (-o);
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero())
        return Poly();
    Poly r;
    r.c_.assign(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j)
            r.c_[i + j] += c_[i] * o.c_[j];
    r.normalize();
    return r;
}

Poly Poly::scaled(const Rational& r) const {
    if (r.is_zero())
        return Poly();
    Poly p(*this);
    for (auto& x : p.c_)
        x *= r;
    return p;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
    if (divisor.is_zero())
        fail(Errc::DivisionByZero, "polynomial division by zero");
    Poly rem(*this);
    Poly quot;
    if (degree() >= divisor.degree())
        quot.c_.assign(degree() - divisor.degree() + 1, Rational(0));
    const Rational lead_inv = divisor.leading().inv();
    while (!rem.is_zero() && rem.degree() >= divisor.degree()) {
        const size_t shift = rem.degree() - divisor.degree();
        const Rational factor = rem.leading() * lead_inv;
        quot.c_[shift] = factor;
        for (size_t i = 0; i < divisor.c_.size(); ++i)
            rem.c_[i + shift] -= factor * divisor.c_[i];
        rem.normalize();
    }
    quot.normalize();
    return {quot, rem};
}

Poly Poly::derivative() const {
    Poly r;
    if (c_.size() <= 1)
        return r;
    r.c_.resize(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i)
        r.c_[i - 1] = c_[i] * Rational(static_cast<long>(i));
    r.normalize();
    return r;
}

Poly Poly::monic() const {
    if (is_zero())
        return Poly();
    return scaled(leading().inv());
}

Poly Poly::pow(unsigned k) const {
    Poly result = Poly::constant(Rational(1));
    Poly base(*this);
    while (k > 0) {
        if (k & 1u)
            result = result * base;
        base = base * base;
        k >>= 1u;
    }
    return result;
}

Rational Poly::eval(const Rational& x) const {
    Rational acc(0);
    for (size_t i = c_.size(); i > 0; --i)
        acc = acc * x + c_[i - 1];
    return acc;
}

std::string Poly::to_string(const std::string& var) const {
    if (is_zero())
        return "0";
    std::string out;
    for (size_t i = c_.size(); i > 0; --i) {
        const Rational& a = c_[i - 1];
        if (a.is_zero())
            continue;
        const size_t e = i - 1;
        const bool neg = a.sign() < 0;
        if (out.empty())
            out = neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        const Rational mag = a.abs();
        if (e == 0) {
            out += mag.to_string();
        } else {
            if (!mag.is_one()) {
                out += mag.to_string();
                out += "*";
            }
            out += var;
            if (e > 1) {
                out += "^";
                out += std::to_string(e);
            }
        }
    }
    return out;
}

namespace {

// Integer image with content removed; sign normalized to positive leading.
std::vector<mpz_class> z_primitive(const Poly& p) {
    mpz_class den = 1;
    for (const auto& a : p.coeffs())
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a.denominator().get_mpz_t());
    std::vector<mpz_class> v;
    v.reserve(p.coeffs().size());
    mpz_class content = 0;
    for (const auto& a : p.coeffs()) {
        v.push_back(a.numerator() * (den / a.denominator()));
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.back().get_mpz_t());
    }
    if (content > 1)
        for (auto& x : v)
            x /= content;
    if (!v.empty() && v.back() < 0)
        for (auto& x : v)
            x = -x;
    return v;
}

void z_strip_content(std::vector<mpz_class>& v) {
    mpz_class content = 0;
    for (const auto& x : v)
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
    if (content > 1)
        for (auto& x : v)
            x /= content;
    if (!v.empty() && v.back() < 0)
        for (auto& x : v)
            x = -x;
}

// Pseudo-remainder of a by b over Z (b nonempty, deg a >= deg b on entry not
// required); trailing zeros stripped.
std::vector<mpz_class> z_prem(std::vector<mpz_class> r, const std::vector<mpz_class>& b) {
    const size_t db = b.size() - 1;
    while (r.size() > db) {
        const mpz_class lead = r.back();
        const size_t shift = r.size() - 1 - db;
        for (size_t i = 0; i < r.size() - 1; ++i)
            r[i] *= b.back();
        for (size_t i = 0; i < db; ++i)
            r[i + shift] -= lead * b[i];
        r.pop_back();
        while (!r.empty() && r.back() == 0)
            r.pop_back();
    }
    return r;
}

} // namespace

Poly poly_gcd(Poly a, Poly b) {
    if (a.is_zero())
        return b.monic();
    if (b.is_zero())
        return a.monic();
    if (a.is_constant() || b.is_constant())
        return Poly::constant(Rational(1));
    std::vector<mpz_class> az = z_primitive(a);
    std::vector<mpz_class> bz = z_primitive(b);
    if (az.size() < bz.size())
        az.swap(bz);
    while (!bz.empty()) {
        std::vector<mpz_class> r = z_prem(std::move(az), bz);
        z_strip_content(r);
        az = std::move(bz);
        bz = std::move(r);
    }
    std::vector<Rational> coeffs;
    coeffs.reserve(az.size());
    for (const auto& x : az)
        coeffs.emplace_back(Rational(mpq_class(x)));
    return Poly(std::move(coeffs)).monic();
}

Poly poly_lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero())
        return Poly();
    const Poly g = poly_gcd(a, b);
    return (a * b).divmod(g).first.monic();
}

namespace {

// Trial division; factors beyond the trial bound are accepted when probably
// prime, otherwise the divisor enumeration is abandoned.
std::vector<mpz_class> positive_divisors(const mpz_class& n_in) {
    mpz_class n = abs(n_in);
    std::vector<std::pair<mpz_class, unsigned>> factors;
    mpz_class m = n;
    for (mpz_class p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (p > 1000000) {
            if (mpz_probab_prime_p(m.get_mpz_t(), 40))
                break;
            fail(Errc::UncertifiedIrreducibility,
                 "coefficient too large to enumerate divisors: " + m.get_str());
        }
        unsigned e = 0;
        while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
            m /= p;
            ++e;
        }
        if (e)
            factors.emplace_back(p, e);
    }
    if (m > 1)
        factors.emplace_back(m, 1);
    std::vector<mpz_class> divs{1};
    for (const auto& [p, e] : factors) {
        const size_t base = divs.size();
        if (base * (e + 1) > 200000)
            fail(Errc::UncertifiedIrreducibility,
                 "too many divisor candidates for rational root search");
        mpz_class pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < base; ++i)
                divs.push_back(divs[i] * pk);
        }
    }
    return divs;
}

} // namespace

std::vector<Rational> rational_roots(const Poly& p) {
    if (p.is_zero())
        fail(Errc::DivisionByZero, "rational roots of the zero polynomial");
    std::vector<Rational> roots;
    // Strip roots at zero.
    size_t low = 0;
    while (p.coeff(low).is_zero())
        ++low;
    if (low > 0)
        roots.push_back(Rational(0));
    std::vector<Rational> shifted(p.coeffs().begin() + static_cast<long>(low),
                                  p.coeffs().end());
    const Poly q{std::move(shifted)};
    if (q.degree() >= 1) {
        // Clear denominators to an integer polynomial.
        mpz_class den = 1;
        for (const auto& a : q.coeffs())
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a.denominator().get_mpz_t());
        const mpz_class a0 = q.coeff(0).numerator() * (den / q.coeff(0).denominator());
        const mpz_class an = q.leading().numerator() * (den / q.leading().denominator());
        for (const auto& num : positive_divisors(a0)) {
            for (const auto& d : positive_divisors(an)) {
                for (int sign : {1, -1}) {
                    const Rational cand(mpq_class(sign * num, d));
                    if (q.eval(cand).is_zero())
                        roots.push_back(cand);
                }
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

} // namespace derivlab
