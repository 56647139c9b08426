#pragma once

#include <string>
#include <string_view>

#include "toricfol/forms.hpp"

namespace toricfol {

/// Text syntax, with 1-based variable names:
///   expr   := term (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*        '*' is the wedge product
///   unary  := ('-'|'+') unary | power
///   power  := atom ('^' integer)?
///   atom   := integer | xK | dxK | dx[i,j,...] | '(' expr ')'
/// Division is only by nonzero constants. Throws ParseError with a column.
DiffForm parse_form(std::string_view text, std::size_t nvars);
/// As parse_form, requiring a 0-form.
Polynomial parse_polynomial(std::string_view text, std::size_t nvars);

/// Printers emitting the same syntax; terms appear in degrevlex order, so the
/// output is deterministic and parses back to the same object.
std::string to_string(const Rational& c);
std::string to_string(const Polynomial& p);
std::string to_string(const DiffForm& w);

}  // namespace toricfol
