#pragma once

#include <memory>
#include <string>
#include <vector>

#include "derivlab/poly.hpp"
#include "derivlab/rational.hpp"
#include "derivlab/report.hpp"

namespace derivlab {

class TowerField;
using TowerPtr = std::shared_ptr<const TowerField>;

namespace detail {

// Canonical nested element representation. Level 0 is a rational function in
// the transcendental generator (denominator 1 and constant numerator when the
// tower has none); level k > 0 is a residue vector of fixed length equal to
// the k-th minimal polynomial degree, entries one level down.
struct Value {
    int level = 0;
    Poly num;
    Poly den = Poly::constant(Rational(1));
    std::vector<Value> coeffs;

    bool operator==(const Value& o) const = default;
};

} // namespace detail

class FieldElement;

struct GeneratorSpec {
    std::string name;
    bool transcendental = false;
    Poly min_poly;
    bool assume_irreducible = false;
};

class TowerField : public std::enable_shared_from_this<TowerField> {
public:
    struct AlgLevel {
        std::string name;
        std::vector<detail::Value> min_poly; // monic, lowest first, entries one level down
        bool assumed = false;
        std::string note;
    };

    static TowerPtr rationals();

    TowerPtr extend_transcendental(const std::string& name) const;
    TowerPtr extend_algebraic(const std::string& name,
                              const std::vector<FieldElement>& min_poly_coeffs,
                              bool assume_irreducible = false) const;
    TowerPtr extend_algebraic(const std::string& name, const Poly& min_poly,
                              bool assume_irreducible = false) const;

    bool has_transcendental() const { return !trans_name_.empty(); }
    const std::string& transcendental_name() const { return trans_name_; }
    const std::vector<AlgLevel>& levels() const { return algs_; }
    size_t height() const { return algs_.size(); }

    std::vector<std::string> generator_names() const;
    bool has_generator(const std::string& name) const;

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_rational(const Rational& r) const;
    FieldElement integer(long v) const;
    FieldElement generator(const std::string& name) const;
    FieldElement from_value(detail::Value v) const;
    // Min poly of an algebraic generator, coefficients lifted to this tower.
    std::vector<FieldElement> min_poly_coeffs(const std::string& name) const;

    std::string describe() const;
    std::vector<std::string> assumptions() const;

    bool same_as(const TowerField& o) const;
    bool prefix_of(const TowerField& o) const;

private:
    friend class FieldElement;
    TowerField() = default;
    std::string trans_name_;
    std::vector<AlgLevel> algs_;
};

// Convenience builder for rational-coefficient generator specs.
TowerPtr build_tower(const std::vector<GeneratorSpec>& spec);

class FieldElement {
public:
    FieldElement() = default;

    const TowerPtr& tower() const { return tower_; }
    const detail::Value& value() const { return v_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    Rational to_rational() const;

    FieldElement operator-() const;
    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);

    FieldElement operator*(const Rational& r) const;
    FieldElement operator/(const Rational& r) const;

    FieldElement inv() const;
    FieldElement pow(long k) const;

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    FieldElement lift_to(const TowerPtr& taller) const;
    std::string to_string() const;

private:
    friend class TowerField;
    FieldElement(TowerPtr t, detail::Value v) : tower_(std::move(t)), v_(std::move(v)) {}
    static std::pair<FieldElement, FieldElement> coerced(const FieldElement& a,
                                                         const FieldElement& b);
    TowerPtr tower_;
    detail::Value v_;
};

inline FieldElement operator*(const Rational& r, const FieldElement& x) { return x * r; }

struct MobiusCoeffs {
    Rational a, b, c, d;
    MobiusCoeffs(Rational a_, Rational b_, Rational c_, Rational d_);
    Rational det() const { return a * d - b * c; }
    std::string to_string() const;
};

// (a*x^n + b) / (c*x^n + d)
FieldElement mobius_apply(const MobiusCoeffs& M, long n, const FieldElement& x);

// D/(x^n + d) = D/d - D*x^n/(d*(x^n + d)), the reciprocal-substitution split
// with the n-th root eliminated; requires the c=1 normalization.
VerdictReport mobius_split_identity(const MobiusCoeffs& M, long n, const FieldElement& x);

} // namespace derivlab
