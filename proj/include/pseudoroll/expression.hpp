#pragma once

#include <functional>
#include <string>

#include "pseudoroll/errors.hpp"

namespace pseudoroll {

/// Compile a one-variable control expression in t into a callable.
///
/// The grammar is deliberately small (see docs/control_grammar.md):
/// floating-point literals, the variable t, the four arithmetic operators
/// with the usual precedence, parentheses, unary +/-, and the functions
/// sin, cos, sinh, cosh.  Malformed input raises ParseError with the
/// offending column.
std::function<double(double)> parse_expression(const std::string& text);

}  // namespace pseudoroll
