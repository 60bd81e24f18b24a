#include "derivlab/elem_parse.hpp"

#include <cctype>

#include "derivlab/error.hpp"

namespace derivlab {

std::vector<Token> lex_source(const std::string& text) {
    std::vector<Token> toks;
    int line = 1, col = 1;
    size_t i = 0;
    const size_t n = text.size();
    auto push = [&](Token::Kind k, std::string s, int l, int c) {
        toks.push_back(Token{k, std::move(s), l, c});
    };
    while (i < n) {
        const char ch = text[i];
        if (ch == '\n') {
            push(Token::Newline, "\n", line, col);
            ++i;
            ++line;
            col = 1;
            continue;
        }
        if (ch == ' ' || ch == '\t' || ch == '\r') {
            ++i;
            ++col;
            continue;
        }
        if (ch == '#') {
            while (i < n && text[i] != '\n') {
                ++i;
                ++col;
            }
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            const int c0 = col;
            std::string s;
            while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
                s += text[i++];
                ++col;
            }
            push(Token::Int, std::move(s), line, c0);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            const int c0 = col;
            std::string s;
            while (i < n && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
                s += text[i++];
                ++col;
            }
            push(Token::Ident, std::move(s), line, c0);
            continue;
        }
        static const std::string punct = "+-*/^(),;=|:";
        if (punct.find(ch) != std::string::npos) {
            push(Token::Punct, std::string(1, ch), line, col);
            ++i;
            ++col;
            continue;
        }
        throw ParseError(line, col, std::string("unexpected character '") + ch + "'");
    }
    push(Token::End, "", line, col);
    return toks;
}

namespace {

const Token& at(const std::vector<Token>& toks, size_t pos) {
    return pos < toks.size() ? toks[pos] : toks.back();
}

bool is_punct(const Token& t, const char* s) {
    return t.kind == Token::Punct && t.text == s;
}

[[noreturn]] void expected(const Token& t, const std::string& what) {
    const std::string got = t.kind == Token::End       ? "end of input"
                            : t.kind == Token::Newline ? "end of line"
                                                       : "'" + t.text + "'";
    throw ParseError(t.line, t.col, "expected " + what + ", got " + got);
}

long parse_exponent(const std::vector<Token>& toks, size_t& pos) {
    bool neg = false;
    if (is_punct(at(toks, pos), "-")) {
        neg = true;
        ++pos;
    }
    const Token& t = at(toks, pos);
    if (t.kind != Token::Int)
        expected(t, "an integer exponent");
    ++pos;
    long e = 0;
    try {
        e = std::stol(t.text);
    } catch (...) {
        throw ParseError(t.line, t.col, "exponent out of range");
    }
    return neg ? -e : e;
}

// Expression evaluator shared between field elements and dense polynomials
// over a tower (for minimal polynomials with an indeterminate). Ops must
// provide: value type V, from_int, from_gen, pow, neg, add, sub, mul, div.
template <typename Ops>
typename Ops::V parse_sum(const std::vector<Token>& toks, size_t& pos, Ops& ops);

template <typename Ops>
typename Ops::V parse_primary(const std::vector<Token>& toks, size_t& pos, Ops& ops) {
    const Token& t = at(toks, pos);
    if (t.kind == Token::Int) {
        ++pos;
        return ops.from_int(t);
    }
    if (t.kind == Token::Ident) {
        ++pos;
        return ops.from_gen(t);
    }
    if (is_punct(t, "(")) {
        ++pos;
        auto v = parse_sum(toks, pos, ops);
        if (!is_punct(at(toks, pos), ")"))
            expected(at(toks, pos), "')'");
        ++pos;
        return v;
    }
    expected(t, "a number, generator, or '('");
}

template <typename Ops>
typename Ops::V parse_power(const std::vector<Token>& toks, size_t& pos, Ops& ops) {
    auto base = parse_primary(toks, pos, ops);
    if (is_punct(at(toks, pos), "^")) {
        const Token& op = at(toks, pos);
        ++pos;
        return ops.pow(base, parse_exponent(toks, pos), op);
    }
    return base;
}

template <typename Ops>
typename Ops::V parse_unary(const std::vector<Token>& toks, size_t& pos, Ops& ops) {
    if (is_punct(at(toks, pos), "-")) {
        ++pos;
        return ops.neg(parse_unary(toks, pos, ops));
    }
    return parse_power(toks, pos, ops);
}

template <typename Ops>
typename Ops::V parse_product(const std::vector<Token>& toks, size_t& pos, Ops& ops) {
    auto v = parse_unary(toks, pos, ops);
    for (;;) {
        const Token& t = at(toks, pos);
        if (is_punct(t, "*")) {
            ++pos;
            v = ops.mul(v, parse_unary(toks, pos, ops));
        } else if (is_punct(t, "/")) {
            ++pos;
            v = ops.div(v, parse_unary(toks, pos, ops), t);
        } else {
            return v;
        }
    }
}

template <typename Ops>
typename Ops::V parse_sum(const std::vector<Token>& toks, size_t& pos, Ops& ops) {
    auto v = parse_product(toks, pos, ops);
    for (;;) {
        const Token& t = at(toks, pos);
        if (is_punct(t, "+")) {
            ++pos;
            v = ops.add(v, parse_product(toks, pos, ops));
        } else if (is_punct(t, "-")) {
            ++pos;
            v = ops.sub(v, parse_product(toks, pos, ops));
        } else {
            return v;
        }
    }
}

struct ElementOps {
    using V = FieldElement;
    TowerPtr K;

    V from_int(const Token& t) { return K->from_rational(Rational::from_string(t.text)); }
    V from_gen(const Token& t) {
        if (!K->has_generator(t.text))
            throw ParseError(t.line, t.col,
                             "unknown generator '" + t.text + "' in " + K->describe());
        return K->generator(t.text);
    }
    V pow(const V& b, long e, const Token&) { return b.pow(e); }
    V neg(const V& v) { return -v; }
    V add(const V& a, const V& b) { return a + b; }
    V sub(const V& a, const V& b) { return a - b; }
    V mul(const V& a, const V& b) { return a * b; }
    V div(const V& a, const V& b, const Token&) { return a / b; }
};

// Dense polynomial in one indeterminate with FieldElement coefficients. The
// indeterminate may be written as the generator's own name, or as "x" when x
// is not itself a declared generator.
struct PolyOps {
    using V = std::vector<FieldElement>;
    TowerPtr K;
    std::string var;

    bool is_var(const std::string& s) const {
        return s == var || (s == "x" && !K->has_generator("x"));
    }
    V constant(const FieldElement& e) { return {e}; }
    V from_int(const Token& t) { return constant(K->from_rational(Rational::from_string(t.text))); }
    V from_gen(const Token& t) {
        if (is_var(t.text))
            return {K->zero(), K->one()};
        if (!K->has_generator(t.text))
            throw ParseError(t.line, t.col,
                             "unknown name '" + t.text + "' in a minimal polynomial");
        return constant(K->generator(t.text));
    }
    static void trim(V& v) {
        while (!v.empty() && v.back().is_zero())
            v.pop_back();
    }
    V neg(const V& v) {
        V r;
        r.reserve(v.size());
        for (const auto& c : v)
            r.push_back(-c);
        return r;
    }
    V add(const V& a, const V& b) {
        V r = a.size() >= b.size() ? a : b;
        const V& small = a.size() >= b.size() ? b : a;
        for (size_t i = 0; i < small.size(); ++i)
            r[i] += small[i];
        trim(r);
        return r;
    }
    V sub(const V& a, const V& b) { return add(a, neg(b)); }
    V mul(const V& a, const V& b) {
        if (a.empty() || b.empty())
            return {};
        V r(a.size() + b.size() - 1, K->zero());
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j)
                r[i + j] += a[i] * b[j];
        trim(r);
        return r;
    }
    V pow(const V& b, long e, const Token& t) {
        if (e < 0)
            throw ParseError(t.line, t.col, "negative exponent in a minimal polynomial");
        V r = constant(K->one());
        for (long i = 0; i < e; ++i)
            r = mul(r, b);
        return r;
    }
    V div(const V& a, const V& b, const Token& t) {
        if (b.size() > 1)
            throw ParseError(t.line, t.col,
                             "division by the indeterminate in a minimal polynomial");
        if (b.empty())
            fail(Errc::DivisionByZero, "division by zero in a minimal polynomial");
        V r = a;
        for (auto& c : r)
            c = c / b[0];
        return r;
    }
};

void skip_newlines(const std::vector<Token>& toks, size_t& pos) {
    while (at(toks, pos).kind == Token::Newline)
        ++pos;
}

} // namespace

FieldElement parse_element_at(const std::vector<Token>& toks, size_t& pos, const TowerPtr& K) {
    ElementOps ops{K};
    return parse_sum(toks, pos, ops);
}

FieldElement parse_element(const std::string& text, const TowerPtr& K) {
    const auto toks = lex_source(text);
    size_t pos = 0;
    skip_newlines(toks, pos);
    FieldElement e = parse_element_at(toks, pos, K);
    skip_newlines(toks, pos);
    if (at(toks, pos).kind != Token::End)
        expected(at(toks, pos), "end of expression");
    return e;
}

TowerPtr parse_tower_at(const std::vector<Token>& toks, size_t& pos, bool assume_irreducible) {
    const Token& q = at(toks, pos);
    if (q.kind != Token::Ident || q.text != "Q")
        expected(q, "'Q'");
    ++pos;
    TowerPtr K = TowerField::rationals();
    if (!is_punct(at(toks, pos), "("))
        return K;
    ++pos;
    for (;;) {
        const Token& name = at(toks, pos);
        if (name.kind != Token::Ident)
            expected(name, "a generator name");
        ++pos;
        const Token& sep = at(toks, pos);
        if (is_punct(sep, "|")) {
            ++pos;
            PolyOps ops{K, name.text};
            auto lhs = parse_sum(toks, pos, ops);
            if (is_punct(at(toks, pos), "=")) {
                ++pos;
                auto rhs = parse_sum(toks, pos, ops);
                lhs = ops.sub(lhs, rhs);
            }
            if (lhs.size() < 2)
                throw ParseError(name.line, name.col,
                                 "minimal polynomial of " + name.text +
                                     " must mention the indeterminate");
            const FieldElement lead = lhs.back();
            if (!lead.is_one())
                for (auto& c : lhs)
                    c = c / lead;
            K = K->extend_algebraic(name.text, lhs, assume_irreducible);
        } else {
            K = K->extend_transcendental(name.text);
        }
        const Token& nxt = at(toks, pos);
        if (is_punct(nxt, ",")) {
            ++pos;
            continue;
        }
        if (is_punct(nxt, ")")) {
            ++pos;
            return K;
        }
        expected(nxt, "',' or ')'");
    }
}

TowerPtr parse_tower_descriptor(const std::string& text, bool assume_irreducible) {
    const auto toks = lex_source(text);
    size_t pos = 0;
    skip_newlines(toks, pos);
    TowerPtr K = parse_tower_at(toks, pos, assume_irreducible);
    skip_newlines(toks, pos);
    if (at(toks, pos).kind != Token::End)
        expected(at(toks, pos), "end of tower descriptor");
    return K;
}

} // namespace derivlab
