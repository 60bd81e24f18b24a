#include "derivlab/rational.hpp"

#include <ostream>

namespace derivlab {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::DivisionByZero: return "DivisionByZero";
        case Errc::TowerMismatch: return "TowerMismatch";
        case Errc::PoleHit: return "PoleHit";
        case Errc::OutOfDomain: return "OutOfDomain";
        case Errc::RationalRootFound: return "RationalRootFound";
        case Errc::MultipleTranscendentals: return "MultipleTranscendentals";
        case Errc::TranscendentalNotFirst: return "TranscendentalNotFirst";
        case Errc::DuplicateName: return "DuplicateName";
        case Errc::UncertifiedIrreducibility: return "UncertifiedIrreducibility";
        case Errc::ReducibleMinPoly: return "ReducibleMinPoly";
        case Errc::MinPolyDegree: return "MinPolyDegree";
        case Errc::DependentBasis: return "DependentBasis";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::MissingImage: return "MissingImage";
        case Errc::InseparableGenerator: return "InseparableGenerator";
        case Errc::BasePointDependence: return "BasePointDependence";
        case Errc::DegreeExceeded: return "DegreeExceeded";
        case Errc::ArityError: return "ArityError";
        case Errc::ParameterOutOfRange: return "ParameterOutOfRange";
        case Errc::NonInvertible: return "NonInvertible";
        case Errc::SyntaxError: return "SyntaxError";
        case Errc::UnknownName: return "UnknownName";
    }
    return "UnknownError";
}

Rational::Rational(long num, long den) {
    if (den == 0) fail(Errc::DivisionByZero, "rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::from_string(std::string_view text) {
    std::string s(text);
    mpq_class q;
    if (q.set_str(s, 10) != 0) fail(Errc::SyntaxError, "bad rational literal '" + s + "'");
    if (q.get_den() == 0) fail(Errc::DivisionByZero, "rational with zero denominator");
    q.canonicalize();
    return Rational(std::move(q));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.is_zero()) fail(Errc::DivisionByZero, "rational division by zero");
    return Rational(mpq_class(q_ / o.q_));
}

Rational Rational::inv() const {
    if (is_zero()) fail(Errc::DivisionByZero, "inverse of zero");
    return Rational(mpq_class(1 / q_));
}

Rational Rational::pow(long k) const {
    if (k == 0) return Rational(1);
    Rational base = *this;
    if (k < 0) {
        base = base.inv();
        k = -k;
    }
    Rational acc(1);
    while (k > 0) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

std::string Rational::to_string() const { return q_.get_str(); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational binomial(unsigned n, unsigned k) {
    if (k > n) return Rational(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rational(mpq_class(b));
}

Rational factorial(unsigned k) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), k);
    return Rational(mpq_class(f));
}

} // namespace derivlab
