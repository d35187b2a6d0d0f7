#pragma once

#include <string>
#include <string_view>

#include "ringlab/descriptor.hpp"
#include "ringlab/ring.hpp"

namespace ringlab {

/// Ring specification grammar (keywords are case-sensitive, whitespace is insignificant):
///
///     ring  := term ( "x" term )*                      left-associated products
///     term  := atom [ "[" group "]" ]                  group-ring suffix binds tighter than "x"
///     atom  := "Z" INT | "ZZ" | "M" INT "(" ring ")" | "T" INT "(" ring ")"
///            | "GF" "(" INT "^" INT ")" | "POLY" "(" "Z" INT ")"
///            | "Q" "(" "Z" INT "," "[" INT ("," INT)* "]" ")"
///            | "(" ring ")"
///     group := "C" INT [ "x" "C" INT ] | "S3" | "D4" | "Q8"
///
/// GF(p^k) expands to Q(Zp, f) with f = least_irreducible(p, k). Throws ParseError with code SyntaxError or
/// SemanticError.
RingDescriptor parse_ring(std::string_view text);

/// Canonical spelling. Parenthesised atoms appear only where the grammar needs them (right-nested products,
/// group rings over products or group rings); Q(Zp, f) prints as GF(p^k) when f is the canonical irreducible.
std::string print(const RingDescriptor& d);

/// Element literals: Z_n and ZZ take signed decimals (reduced), products "(a, b)", matrices "[[a, b], [c, d]]",
/// group rings "{name: coeff, ...}", polynomial rings "[c0, c1, ...]" low-to-high. Quotient rings take a
/// literal of the parent ring and project it. Throws ParseError (SyntaxError or WrongShape).
Element parse_element(const Ring& ring, std::string_view text);

std::string print(const Ring& ring, const Element& e);

}  // namespace ringlab
