#pragma once

// Text form of polynomials: "x^4 - 10*x^2 + 1" or a descending coefficient
// list "1 0 -10 0 1".

#include <string>
#include <string_view>

#include "subscan/poly.hpp"

namespace subscan {

/// Throws SyntaxError (with a character offset) and MultipleVariables.
/// '#' starts a comment that runs to the end of the line.
PolyQ parse_poly(std::string_view text);

/// Expression form in the variable `var`, e.g. "x^4 - 10*x^2 + 1".
std::string render(const PolyQ& p, char var = 'x');
std::string render(const PolyZ& p, char var = 'x');

}  // namespace subscan
