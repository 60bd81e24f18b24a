#pragma once

#include <string>
#include <vector>

#include "derivlab/tower.hpp"

namespace derivlab {

// Token stream shared by the element grammar and the scenario grammar.
// Lines and columns are 1-based; '#' starts a comment running to end of line.
struct Token {
    enum Kind { Int, Ident, Punct, Newline, End };
    Kind kind;
    std::string text;
    int line;
    int col;
};

std::vector<Token> lex_source(const std::string& text);

// Infix expression over rational literals and generator names with
// precedence ^ (integer exponents) > unary - > * / > + -, left-associative.
// parse_element(e.to_string(), K) == e for every canonical element e.
FieldElement parse_element(const std::string& text, const TowerPtr& K);

// Same grammar, consuming tokens from pos until the expression can no longer
// be extended. Used by the scenario parser for embedded expressions.
FieldElement parse_element_at(const std::vector<Token>& toks, size_t& pos, const TowerPtr& K);

// Tower descriptor syntax:
//   Q                          the rationals
//   Q(t)                       one transcendental generator
//   Q(sqrt2 | x^2 - 2)         algebraic generator; min poly in x or in the
//                              generator's own name, "= 0" implied
//   Q(t, s | s^2 = t)          equation form; coefficients may refer to
//                              generators declared earlier in the list
// Non-monic minimal polynomials are normalized by the leading coefficient.
TowerPtr parse_tower_descriptor(const std::string& text, bool assume_irreducible = false);

TowerPtr parse_tower_at(const std::vector<Token>& toks, size_t& pos, bool assume_irreducible);

} // namespace derivlab
