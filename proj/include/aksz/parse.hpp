#pragma once

#include <string>
#include <string_view>

#include "aksz/poly.hpp"

namespace aksz {

/// Parses
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := rational | ident ('^' uint)? | '-' factor | '(' expr ')'
///   rational := int ('/' uint)?
/// over the identifiers declared in `chart`. Throws ParseError.
GradedPoly parse_expression(std::string_view src, const Chart& chart);

/// Canonical rendering: terms in monomial order, rational coefficients,
/// explicit '*'. Round-trips through parse_expression.
std::string print_poly(const GradedPoly& p);

}  // namespace aksz
