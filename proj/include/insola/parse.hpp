#pragma once

#include <string>

#include "insola/poly.hpp"

namespace insola {

/// Parse a differential-equation expression over the variables z, y, x and
/// the imaginary unit i. Multiplication must be explicit (`*`); exponents are
/// nonnegative integers; decimal and a/b literals are converted to exact
/// rationals. Throws ParseError / NegativeExponent / UnknownIdentifier.
TriPoly parse_ode(const std::string& text);

/// Same grammar restricted to the variable x.
UniPoly parse_recipe(const std::string& text);

/// Constant expression (no variables at all), e.g. "1/2", "3+2*i", "-0.25".
CRat parse_crat(const std::string& text);

}  // namespace insola
