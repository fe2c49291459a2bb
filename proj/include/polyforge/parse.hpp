#pragma once

#include <string>

#include "polyforge/word.hpp"

namespace polyforge {

struct parse_error : error {
  using error::error;
};

// Parses the word grammar
//   word := term (('*'|eps) term)*
//   term := atom ('^' (int | atom))*
//   atom := name | '(' word ')' | '(' word ',' word ')'
// where the two-argument parenthesis (u,v) is the commutator u^-1 v^-1 u v
// and a word exponent is conjugation: u^g = g^-1 u g. Whitespace is
// insignificant; integer exponents may be negative. Generator names are
// matched greedily (longest known name first), so "ab" over {a,b} is a*b.
// The result is freely reduced.
Word parse_word(const std::string& text, const Alphabet& alphabet);

// Canonical printing with '*' separators and run-length exponents, e.g.
// b^-2*a. The empty word prints as "1". parse(print(w)) == w.
std::string print_word(const Word& w, const Alphabet& alphabet);

}  // namespace polyforge
