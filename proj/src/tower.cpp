#include "derivlab/tower.hpp"

#include <algorithm>
#include <utility>

#include "derivlab/error.hpp"

namespace derivlab {

const char* status_name(Status s) {
    switch (s) {
    case Status::PASS: return "PASS";
    case Status::FAIL: return "FAIL";
    case Status::ERROR: return "ERROR";
    }
    return "?";
}

using detail::Value;

namespace {

size_t level_degree(const TowerField& T, int level) {
    return T.levels()[static_cast<size_t>(level) - 1].min_poly.size() - 1;
}

Value rf_make(Poly num, Poly den) {
    if (den.is_zero())
        fail(Errc::DivisionByZero, "zero denominator in rational function");
    Value v;
    if (num.is_zero()) {
        v.den = Poly::constant(Rational(1));
        return v;
    }
    if (den.is_one()) {
        v.num = std::move(num);
        return v;
    }
    Poly g = poly_gcd(num, den);
    if (!g.is_one()) {
        num = num.divmod(g).first;
        den = den.divmod(g).first;
    }
    const Rational lead_inv = den.leading().inv();
    v.num = num.scaled(lead_inv);
    v.den = den.scaled(lead_inv);
    return v;
}

Value v_alg(int level, std::vector<Value> coeffs) {
    Value v;
    v.level = level;
    v.coeffs = std::move(coeffs);
    return v;
}

Value v_zero(const TowerField& T, int level) {
    if (level == 0)
        return Value{};
    return v_alg(level, std::vector<Value>(level_degree(T, level), v_zero(T, level - 1)));
}

Value v_from_rational(const TowerField& T, int level, const Rational& r) {
    if (level == 0) {
        Value v;
        v.num = Poly::constant(r);
        return v;
    }
    Value v = v_zero(T, level);
    v.coeffs[0] = v_from_rational(T, level - 1, r);
    return v;
}

Value v_one(const TowerField& T, int level) {
    return v_from_rational(T, level, Rational(1));
}

bool v_is_zero(const Value& v) {
    if (v.level == 0)
        return v.num.is_zero();
    return std::all_of(v.coeffs.begin(), v.coeffs.end(),
                       [](const Value& c) { return v_is_zero(c); });
}

Value v_neg(const Value& v) {
    Value r(v);
    if (r.level == 0) {
        r.num = -r.num;
    } else {
        for (auto& c : r.coeffs)
            c = v_neg(c);
    }
    return r;
}

Value v_add(const TowerField& T, const Value& a, const Value& b) {
    if (a.level == 0)
        return rf_make(a.num * b.den + b.num * a.den, a.den * b.den);
    Value r = a;
    for (size_t i = 0; i < r.coeffs.size(); ++i)
        r.coeffs[i] = v_add(T, a.coeffs[i], b.coeffs[i]);
    return r;
}

Value v_sub(const TowerField& T, const Value& a, const Value& b) {
    return v_add(T, a, v_neg(b));
}

Value v_mul(const TowerField& T, const Value& a, const Value& b) {
    if (a.level == 0)
        return rf_make(a.num * b.num, a.den * b.den);
    const int level = a.level;
    const size_t d = level_degree(T, level);
    std::vector<Value> conv(2 * d - 1, v_zero(T, level - 1));
    for (size_t i = 0; i < d; ++i) {
        if (v_is_zero(a.coeffs[i]))
            continue;
        for (size_t j = 0; j < d; ++j) {
            if (v_is_zero(b.coeffs[j]))
                continue;
            conv[i + j] = v_add(T, conv[i + j], v_mul(T, a.coeffs[i], b.coeffs[j]));
        }
    }
    const auto& m = T.levels()[static_cast<size_t>(level) - 1].min_poly;
    for (size_t i = 2 * d - 2; i >= d; --i) {
        if (!v_is_zero(conv[i])) {
            for (size_t j = 0; j < d; ++j)
                conv[i - d + j] = v_sub(T, conv[i - d + j], v_mul(T, conv[i], m[j]));
        }
        if (i == d)
            break;
    }
    conv.resize(d);
    return v_alg(level, std::move(conv));
}

// Polynomials over the level-L field: coefficient vectors, lowest first,
// trailing zeros stripped.
using VPoly = std::vector<Value>;

void vp_norm(VPoly& p) {
    while (!p.empty() && v_is_zero(p.back()))
        p.pop_back();
}

Value v_inv(const TowerField& T, const Value& a);

VPoly vp_sub(const TowerField& T, const VPoly& a, const VPoly& b, int L) {
    VPoly r(std::max(a.size(), b.size()), v_zero(T, L));
    for (size_t i = 0; i < r.size(); ++i) {
        Value x = i < a.size() ? a[i] : v_zero(T, L);
        if (i < b.size())
            x = v_sub(T, x, b[i]);
        r[i] = std::move(x);
    }
    vp_norm(r);
    return r;
}

VPoly vp_mul(const TowerField& T, const VPoly& a, const VPoly& b, int L) {
    if (a.empty() || b.empty())
        return {};
    VPoly r(a.size() + b.size() - 1, v_zero(T, L));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = v_add(T, r[i + j], v_mul(T, a[i], b[j]));
    vp_norm(r);
    return r;
}

std::pair<VPoly, VPoly> vp_divmod(const TowerField& T, VPoly rem, const VPoly& b, int L) {
    if (b.empty())
        fail(Errc::DivisionByZero, "polynomial division by zero over tower level");
    VPoly quot;
    if (rem.size() >= b.size())
        quot.assign(rem.size() - b.size() + 1, v_zero(T, L));
    const Value lead_inv = v_inv(T, b.back());
    while (rem.size() >= b.size()) {
        const size_t shift = rem.size() - b.size();
        const Value factor = v_mul(T, rem.back(), lead_inv);
        quot[shift] = factor;
        for (size_t j = 0; j < b.size(); ++j)
            rem[j + shift] = v_sub(T, rem[j + shift], v_mul(T, factor, b[j]));
        vp_norm(rem);
        if (rem.size() >= b.size() + shift + 1)
            fail(Errc::DivisionByZero, "division loop failed to reduce degree");
    }
    vp_norm(quot);
    return {std::move(quot), std::move(rem)};
}

VPoly vp_monic(const TowerField& T, VPoly p) {
    if (p.empty())
        return p;
    const Value inv = v_inv(T, p.back());
    for (auto& c : p)
        c = v_mul(T, c, inv);
    return p;
}

VPoly vp_gcd(const TowerField& T, VPoly a, VPoly b, int L) {
    vp_norm(a);
    vp_norm(b);
    while (!b.empty()) {
        VPoly r = vp_divmod(T, a, b, L).second;
        a = std::move(b);
        b = std::move(r);
    }
    return vp_monic(T, std::move(a));
}

VPoly vp_derivative(const TowerField& T, const VPoly& p, int L) {
    VPoly r;
    if (p.size() <= 1)
        return r;
    r.reserve(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) {
        Value k = v_from_rational(T, L, Rational(static_cast<long>(i)));
        r.push_back(v_mul(T, p[i], k));
    }
    vp_norm(r);
    return r;
}

Value v_inv(const TowerField& T, const Value& a) {
    if (a.level == 0) {
        if (a.num.is_zero())
            fail(Errc::DivisionByZero, "division by zero");
        return rf_make(a.den, a.num);
    }
    const int level = a.level;
    const int L = level - 1;
    const size_t d = level_degree(T, level);
    const auto& lvl = T.levels()[static_cast<size_t>(level) - 1];
    VPoly r0 = lvl.min_poly;
    VPoly r1 = a.coeffs;
    vp_norm(r1);
    if (r1.empty())
        fail(Errc::DivisionByZero, "division by zero");
    VPoly s0;
    VPoly s1{v_one(T, L)};
    while (!r1.empty()) {
        auto [q, r] = vp_divmod(T, r0, r1, L);
        r0 = std::move(r1);
        r1 = std::move(r);
        VPoly s2 = vp_sub(T, s0, vp_mul(T, q, s1, L), L);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.size() > 1)
        fail(Errc::ReducibleMinPoly,
             "zero divisor found: min_poly of " + lvl.name + " is reducible");
    VPoly inv_poly = s0;
    const Value c_inv = v_inv(T, r0[0]);
    for (auto& c : inv_poly)
        c = v_mul(T, c, c_inv);
    inv_poly.resize(d, v_zero(T, L));
    return v_alg(level, std::move(inv_poly));
}

Value v_div(const TowerField& T, const Value& a, const Value& b) {
    return v_mul(T, a, v_inv(T, b));
}

Value v_wrap_to(const TowerField& T, Value v, int target_level) {
    while (v.level < target_level) {
        const int next = v.level + 1;
        std::vector<Value> coeffs(level_degree(T, next), v_zero(T, next - 1));
        coeffs[0] = std::move(v);
        v = v_alg(next, std::move(coeffs));
    }
    return v;
}

size_t poly_term_count(const Poly& p) {
    size_t n = 0;
    for (const auto& c : p.coeffs())
        if (!c.is_zero())
            ++n;
    return n;
}

// True when the string has a top-level sign past position 0, in which case it
// must be parenthesized before a '*'.
bool needs_parens(const std::string& s) {
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        const char ch = s[i];
        if (ch == '(')
            ++depth;
        else if (ch == ')')
            --depth;
        else if (depth == 0 && i > 0 && (ch == '+' || ch == '-'))
            return true;
    }
    return false;
}

std::string rf_to_string(const Value& v, const std::string& tname) {
    if (v.num.is_zero())
        return "0";
    const std::string var = tname.empty() ? "t" : tname;
    if (v.den.is_one())
        return v.num.to_string(var);
    std::string ns = v.num.to_string(var);
    if (poly_term_count(v.num) > 1)
        ns = "(" + ns + ")";
    std::string ds = v.den.to_string(var);
    if (poly_term_count(v.den) > 1)
        ds = "(" + ds + ")";
    return ns + "/" + ds;
}

std::string v_to_string_impl(const TowerField& T, const Value& v);

std::string poly_of_values_string(const TowerField& T, const std::vector<Value>& coeffs,
                                  const std::string& var, int coeff_level) {
    std::string out;
    const Value one = v_one(T, coeff_level);
    const Value minus_one = v_neg(one);
    for (size_t i = coeffs.size(); i > 0; --i) {
        const Value& c = coeffs[i - 1];
        if (v_is_zero(c))
            continue;
        const size_t e = i - 1;
        std::string term;
        if (e == 0) {
            term = v_to_string_impl(T, c);
        } else {
            std::string atom = var;
            if (e > 1)
                atom += "^" + std::to_string(e);
            if (c == one) {
                term = atom;
            } else if (c == minus_one) {
                term = "-" + atom;
            } else {
                std::string cs = v_to_string_impl(T, c);
                if (needs_parens(cs))
                    cs = "(" + cs + ")";
                term = cs + "*" + atom;
            }
        }
        if (out.empty())
            out = term;
        else if (term[0] == '-')
            out += " - " + term.substr(1);
        else
            out += " + " + term;
    }
    return out.empty() ? "0" : out;
}

std::string v_to_string_impl(const TowerField& T, const Value& v) {
    if (v.level == 0)
        return rf_to_string(v, T.transcendental_name());
    if (v_is_zero(v))
        return "0";
    const std::string& var = T.levels()[static_cast<size_t>(v.level) - 1].name;
    return poly_of_values_string(T, v.coeffs, var, v.level - 1);
}

// A Q-linear functional with lambda(1) = 1: evaluate the rational-function
// layer at t0 and take the constant residue coordinate at each algebraic
// level. Used for rational-root candidate screening of minimal polynomials.
Rational leaf_functional(const Value& v, const Rational& t0) {
    if (v.level == 0) {
        const Rational dv = v.den.eval(t0);
        return v.num.eval(t0) / dv;
    }
    return leaf_functional(v.coeffs[0], t0);
}

void collect_denominators(const Value& v, std::vector<Poly>& dens) {
    if (v.level == 0) {
        if (!v.den.is_one())
            dens.push_back(v.den);
        return;
    }
    for (const auto& c : v.coeffs)
        collect_denominators(c, dens);
}

} // namespace

TowerPtr TowerField::rationals() {
    static const TowerPtr q = std::shared_ptr<const TowerField>(new TowerField());
    return q;
}

TowerPtr TowerField::extend_transcendental(const std::string& name) const {
    if (name.empty())
        fail(Errc::SyntaxError, "generator name must be nonempty");
    if (has_transcendental())
        fail(Errc::MultipleTranscendentals, "tower already has transcendental " + trans_name_);
    if (!algs_.empty())
        fail(Errc::TranscendentalNotFirst,
             "transcendental generator must precede algebraic generators");
    auto T = std::shared_ptr<TowerField>(new TowerField(*this));
    T->trans_name_ = name;
    return T;
}

TowerPtr TowerField::extend_algebraic(const std::string& name,
                                      const std::vector<FieldElement>& min_poly_coeffs,
                                      bool assume_irreducible) const {
    if (name.empty())
        fail(Errc::SyntaxError, "generator name must be nonempty");
    if (has_generator(name))
        fail(Errc::DuplicateName, "generator " + name + " already declared");
    const TowerPtr self = shared_from_this();
    std::vector<Value> c;
    c.reserve(min_poly_coeffs.size());
    for (const auto& e : min_poly_coeffs)
        c.push_back(e.lift_to(self).value());
    while (!c.empty() && v_is_zero(c.back()))
        c.pop_back();
    if (c.size() < 3)
        fail(Errc::MinPolyDegree, "min_poly of " + name + " must have degree >= 2");
    const size_t d = c.size() - 1;
    const int H = static_cast<int>(height());
    if (!(c.back() == v_one(*this, H))) {
        const Value lead_inv = v_inv(*this, c.back());
        for (auto& x : c)
            x = v_mul(*this, x, lead_inv);
    }

    // Squarefree over the parent: a repeated factor means reducible in char 0.
    {
        VPoly g = vp_gcd(*this, c, vp_derivative(*this, c, H), H);
        if (g.size() > 1)
            fail(Errc::ReducibleMinPoly, "min_poly of " + name + " has a repeated factor");
    }

    // Rational-root screening: any rational root of the min poly is a root of
    // its image under a Q-linear functional fixing 1, which is a monic
    // rational polynomial of the same degree.
    std::string screening_note;
    {
        std::vector<Poly> dens;
        for (const auto& x : c)
            collect_denominators(x, dens);
        Rational t0(0);
        for (long k = 0;; ++k) {
            t0 = Rational(k);
            bool ok = true;
            for (const auto& dp : dens)
                if (dp.eval(t0).is_zero()) {
                    ok = false;
                    break;
                }
            if (ok)
                break;
        }
        std::vector<Rational> lam;
        lam.reserve(c.size());
        for (const auto& x : c)
            lam.push_back(leaf_functional(x, t0));
        std::vector<Rational> candidates;
        try {
            candidates = rational_roots(Poly(std::move(lam)));
        } catch (const Error& e) {
            if (e.code() != Errc::UncertifiedIrreducibility || !assume_irreducible)
                throw;
            screening_note = "rational-root screening skipped for " + name + ": " +
                             std::string(e.what());
        }
        for (const auto& r : candidates) {
            Value acc = v_zero(*this, H);
            const Value rv = v_from_rational(*this, H, r);
            for (size_t i = c.size(); i > 0; --i)
                acc = v_add(*this, v_mul(*this, acc, rv), c[i - 1]);
            if (v_is_zero(acc))
                fail(Errc::RationalRootFound,
                     "min_poly of " + name + " has rational root " + r.to_string());
        }
    }

    const bool parent_trivial = !has_transcendental() && algs_.empty();
    std::string note;
    if (d >= 4) {
        if (!assume_irreducible)
            fail(Errc::UncertifiedIrreducibility,
                 "degree >= 4 min_poly of " + name + " requires assume_irreducible");
        note = "irreducibility of min_poly of " + name + " (degree " + std::to_string(d) +
               ") assumed, not certified";
    } else if (!parent_trivial) {
        note = "irreducibility of min_poly of " + name + " over " + describe() +
               " screened by rational-root test only; reducibility surfaces at inversion";
    }
    if (!screening_note.empty())
        note += (note.empty() ? "" : "; ") + screening_note;

    auto T = std::shared_ptr<TowerField>(new TowerField(*this));
    T->algs_.push_back(AlgLevel{name, std::move(c), !note.empty(), note});
    return T;
}

TowerPtr TowerField::extend_algebraic(const std::string& name, const Poly& min_poly,
                                      bool assume_irreducible) const {
    std::vector<FieldElement> coeffs;
    coeffs.reserve(min_poly.coeffs().size());
    for (const auto& r : min_poly.coeffs())
        coeffs.push_back(from_rational(r));
    return extend_algebraic(name, coeffs, assume_irreducible);
}

std::vector<std::string> TowerField::generator_names() const {
    std::vector<std::string> out;
    if (has_transcendental())
        out.push_back(trans_name_);
    for (const auto& a : algs_)
        out.push_back(a.name);
    return out;
}

bool TowerField::has_generator(const std::string& name) const {
    if (has_transcendental() && trans_name_ == name)
        return true;
    return std::any_of(algs_.begin(), algs_.end(),
                       [&](const AlgLevel& a) { return a.name == name; });
}

FieldElement TowerField::zero() const {
    return FieldElement(shared_from_this(), v_zero(*this, static_cast<int>(height())));
}

FieldElement TowerField::one() const {
    return from_rational(Rational(1));
}

FieldElement TowerField::from_rational(const Rational& r) const {
    return FieldElement(shared_from_this(),
                        v_from_rational(*this, static_cast<int>(height()), r));
}

FieldElement TowerField::integer(long v) const {
    return from_rational(Rational(v));
}

FieldElement TowerField::generator(const std::string& name) const {
    if (has_transcendental() && name == trans_name_) {
        Value v;
        v.num = Poly::variable();
        return FieldElement(shared_from_this(),
                            v_wrap_to(*this, std::move(v), static_cast<int>(height())));
    }
    for (size_t k = 0; k < algs_.size(); ++k) {
        if (algs_[k].name == name) {
            const int level = static_cast<int>(k) + 1;
            Value v = v_zero(*this, level);
            v.coeffs[1] = v_one(*this, level - 1);
            return FieldElement(shared_from_this(),
                                v_wrap_to(*this, std::move(v), static_cast<int>(height())));
        }
    }
    fail(Errc::UnknownName, "no generator named " + name + " in " + describe());
}

FieldElement TowerField::from_value(detail::Value v) const {
    return FieldElement(shared_from_this(),
                        v_wrap_to(*this, std::move(v), static_cast<int>(height())));
}

std::vector<FieldElement> TowerField::min_poly_coeffs(const std::string& name) const {
    for (size_t k = 0; k < algs_.size(); ++k) {
        if (algs_[k].name == name) {
            std::vector<FieldElement> out;
            out.reserve(algs_[k].min_poly.size());
            for (const auto& c : algs_[k].min_poly)
                out.push_back(from_value(c));
            return out;
        }
    }
    fail(Errc::UnknownName, "no algebraic generator named " + name + " in " + describe());
}

std::string TowerField::describe() const {
    std::vector<std::string> parts;
    if (has_transcendental())
        parts.push_back(trans_name_);
    for (size_t k = 0; k < algs_.size(); ++k) {
        const auto& a = algs_[k];
        parts.push_back(a.name + " | " +
                        poly_of_values_string(*this, a.min_poly, a.name, static_cast<int>(k)));
    }
    if (parts.empty())
        return "Q";
    std::string out = "Q(";
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out += ", ";
        out += parts[i];
    }
    return out + ")";
}

std::vector<std::string> TowerField::assumptions() const {
    std::vector<std::string> out;
    for (const auto& a : algs_)
        if (!a.note.empty())
            out.push_back(a.note);
    return out;
}

bool TowerField::same_as(const TowerField& o) const {
    if (this == &o)
        return true;
    if (trans_name_ != o.trans_name_ || algs_.size() != o.algs_.size())
        return false;
    for (size_t i = 0; i < algs_.size(); ++i)
        if (algs_[i].name != o.algs_[i].name || algs_[i].min_poly != o.algs_[i].min_poly)
            return false;
    return true;
}

bool TowerField::prefix_of(const TowerField& o) const {
    if (has_transcendental() && (!o.has_transcendental() || trans_name_ != o.trans_name_))
        return false;
    if (!has_transcendental() && o.has_transcendental() && !algs_.empty()) {
        // Same algebraic chain over a larger base embeds only when the chain
        // matches structurally, which the comparison below covers.
    }
    if (algs_.size() > o.algs_.size())
        return false;
    for (size_t i = 0; i < algs_.size(); ++i)
        if (algs_[i].name != o.algs_[i].name || algs_[i].min_poly != o.algs_[i].min_poly)
            return false;
    return true;
}

TowerPtr build_tower(const std::vector<GeneratorSpec>& spec) {
    TowerPtr T = TowerField::rationals();
    for (const auto& g : spec) {
        if (g.transcendental)
            T = T->extend_transcendental(g.name);
        else
            T = T->extend_algebraic(g.name, g.min_poly, g.assume_irreducible);
    }
    return T;
}

bool FieldElement::is_zero() const {
    return v_is_zero(v_);
}

bool FieldElement::is_one() const {
    if (!tower_)
        return false;
    return v_ == v_one(*tower_, static_cast<int>(tower_->height()));
}

bool FieldElement::is_rational() const {
    const Value* v = &v_;
    while (v->level > 0) {
        for (size_t i = 1; i < v->coeffs.size(); ++i)
            if (!v_is_zero(v->coeffs[i]))
                return false;
        v = &v->coeffs[0];
    }
    return v->den.is_one() && v->num.degree() <= 0;
}

Rational FieldElement::to_rational() const {
    if (!is_rational())
        fail(Errc::OutOfDomain, "element is not rational: " + to_string());
    const Value* v = &v_;
    while (v->level > 0)
        v = &v->coeffs[0];
    return v->num.coeff(0);
}

std::pair<FieldElement, FieldElement> FieldElement::coerced(const FieldElement& a,
                                                            const FieldElement& b) {
    if (!a.tower_ || !b.tower_)
        fail(Errc::OutOfDomain, "uninitialized field element");
    if (a.tower_ == b.tower_ || a.tower_->same_as(*b.tower_))
        return {a, FieldElement(a.tower_, b.v_)};
    if (a.tower_->prefix_of(*b.tower_))
        return {a.lift_to(b.tower_), b};
    if (b.tower_->prefix_of(*a.tower_))
        return {a, b.lift_to(a.tower_)};
    fail(Errc::TowerMismatch,
         "elements of " + a.tower_->describe() + " and " + b.tower_->describe());
}

FieldElement FieldElement::operator-() const {
    return FieldElement(tower_, v_neg(v_));
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    auto [a, b] = coerced(*this, o);
    return FieldElement(a.tower_, v_add(*a.tower_, a.v_, b.v_));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    auto [a, b] = coerced(*this, o);
    return FieldElement(a.tower_, v_sub(*a.tower_, a.v_, b.v_));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    auto [a, b] = coerced(*this, o);
    return FieldElement(a.tower_, v_mul(*a.tower_, a.v_, b.v_));
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    auto [a, b] = coerced(*this, o);
    return FieldElement(a.tower_, v_div(*a.tower_, a.v_, b.v_));
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    *this = *this + o;
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
    *this = *this - o;
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
    *this = *this * o;
    return *this;
}

FieldElement FieldElement::operator*(const Rational& r) const {
    if (!tower_)
        fail(Errc::OutOfDomain, "uninitialized field element");
    return *this * tower_->from_rational(r);
}

FieldElement FieldElement::operator/(const Rational& r) const {
    return *this * r.inv();
}

FieldElement FieldElement::inv() const {
    if (!tower_)
        fail(Errc::OutOfDomain, "uninitialized field element");
    return FieldElement(tower_, v_inv(*tower_, v_));
}

FieldElement FieldElement::pow(long k) const {
    if (!tower_)
        fail(Errc::OutOfDomain, "uninitialized field element");
    if (k == 0)
        return tower_->one();
    FieldElement base = *this;
    if (k < 0) {
        if (is_zero())
            fail(Errc::DivisionByZero, "negative power of zero");
        base = inv();
        k = -k;
    }
    FieldElement result = tower_->one();
    unsigned long e = static_cast<unsigned long>(k);
    while (e > 0) {
        if (e & 1ul)
            result = result * base;
        base = base * base;
        e >>= 1ul;
    }
    return result;
}

bool FieldElement::operator==(const FieldElement& o) const {
    auto [a, b] = coerced(*this, o);
    return a.v_ == b.v_;
}

FieldElement FieldElement::lift_to(const TowerPtr& taller) const {
    if (!tower_ || !taller)
        fail(Errc::OutOfDomain, "uninitialized field element");
    if (tower_ == taller || tower_->same_as(*taller))
        return FieldElement(taller, v_);
    if (!tower_->prefix_of(*taller))
        fail(Errc::TowerMismatch,
             tower_->describe() + " is not a subtower of " + taller->describe());
    return FieldElement(taller, v_wrap_to(*taller, v_, static_cast<int>(taller->height())));
}

std::string FieldElement::to_string() const {
    if (!tower_)
        return "<uninitialized>";
    return v_to_string_impl(*tower_, v_);
}

MobiusCoeffs::MobiusCoeffs(Rational a_, Rational b_, Rational c_, Rational d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    if ((a * d - b * c).is_zero())
        fail(Errc::NonInvertible, "Mobius matrix (" + a.to_string() + "," + b.to_string() +
                                      ";" + c.to_string() + "," + d.to_string() +
                                      ") has determinant zero");
}

std::string MobiusCoeffs::to_string() const {
    return "(" + a.to_string() + "," + b.to_string() + ";" + c.to_string() + "," +
           d.to_string() + ")";
}

FieldElement mobius_apply(const MobiusCoeffs& M, long n, const FieldElement& x) {
    const FieldElement xn = x.pow(n);
    const TowerPtr& K = x.tower();
    const FieldElement den = xn * M.c + K->from_rational(M.d);
    if (den.is_zero())
        fail(Errc::PoleHit, "c*x^n + d = 0 at x = " + x.to_string());
    return (xn * M.a + K->from_rational(M.b)) / den;
}

VerdictReport mobius_split_identity(const MobiusCoeffs& M, long n, const FieldElement& x) {
    VerdictReport rep;
    rep.check = "mobius_split_identity";
    rep.anchor = "D/(x^n+d) = D/d - D*x^n/(d*(x^n+d))";
    rep.samples_tested = 1;
    if (M.c != Rational(1))
        fail(Errc::ParameterOutOfRange, "split identity requires the c=1 normalization");
    if (M.d.is_zero())
        fail(Errc::ParameterOutOfRange, "split identity requires d != 0");
    if (x.is_zero())
        fail(Errc::DivisionByZero, "split identity requires x != 0");
    const TowerPtr& K = x.tower();
    const FieldElement xn = x.pow(n);
    const FieldElement denom = xn + K->from_rational(M.d);
    if (denom.is_zero())
        fail(Errc::PoleHit, "x^n + d = 0 at x = " + x.to_string());
    const Rational D = M.det();
    const FieldElement lhs = K->from_rational(D) / denom;
    const FieldElement rhs =
        K->from_rational(D / M.d) - (xn * D) / (denom * M.d);
    if (lhs == rhs) {
        rep.status = Status::PASS;
    } else {
        rep.status = Status::FAIL;
        Witness w;
        w.inputs = {{"x", x.to_string()},
                    {"n", std::to_string(n)},
                    {"d", M.d.to_string()},
                    {"D", D.to_string()}};
        w.lhs = lhs.to_string();
        w.rhs = rhs.to_string();
        rep.witness = w;
    }
    for (const auto& note : K->assumptions())
        rep.assumptions.push_back(note);
    return rep;
}

} // namespace derivlab
