#pragma once

#include <string>

#include "insola/poly.hpp"

namespace insola {

/// How a residual decomposes around the infinitesimal indeterminate.
enum class ResidualClass {
    HyperSolution,  ///< residual = a*G: infinitesimal for every finite input
    HyperTaylor,    ///< residual = r*x^n + a*G, r != 0, deg_x G < n
    HyperLocal,     ///< residual = P(x) + a*G, P(0) = 0, deg_x G < deg P
    None,           ///< none of the above
};

enum class Domain {
    AllFinite,         ///< valid for every finite input
    InfinitesimalOnly  ///< valid only for infinitesimal inputs
};

const char* to_string(ResidualClass c);
const char* to_string(Domain d);

/// Result of classifying a residual F(f', f, x) = P(x) + a*G(x, a).
/// P and G are always filled in; r and n only carry meaning for HyperTaylor.
struct Classification {
    ResidualClass kind = ResidualClass::None;
    Domain domain = Domain::InfinitesimalOnly;
    UniPoly P;
    BiPoly G;
    CRat r;
    int n = 0;
};

/// The exact difference quotient (f(x+a) - f(x)) / a as a polynomial in
/// (x, a). Setting a = 0 recovers the formal derivative of f.
BiPoly hyper_diff(const UniPoly& f);

/// Substitute z := hyper_diff(f), y := f, x := x into F and expand; the
/// exact residual polynomial in (x, a).
BiPoly apply_ode(const TriPoly& F, const UniPoly& f);

/// Strongest applicable class, in the order
/// HyperSolution > HyperTaylor > HyperLocal > None.
Classification classify(const BiPoly& residual);

/// Form predicates used by the property tests; classify() is the precedence
/// wrapper over these.
bool hyper_solution_form(const BiPoly& residual);
bool hyper_taylor_form(const BiPoly& residual, bool allow_zero_r = false);
bool hyper_local_form(const BiPoly& residual);

}  // namespace insola
