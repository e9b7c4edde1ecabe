#pragma once

#include <string>
#include <vector>

#include "insola/hyper.hpp"
#include "insola/recipe.hpp"

namespace insola {

/// How a recipe travels when the equation is re-centered at x0:
/// Identity keeps f, Shift uses f(x + x0), Scale uses f(x / x0).
enum class TransportRule { Identity, Shift, Scale };

const char* to_string(TransportRule r);
bool rule_from_string(const std::string& s, TransportRule* out);

/// The differential equation re-centered at x0: x -> x + x0 in the x slot.
TriPoly ode_at(const TriPoly& F, const CRat& x0);

/// Apply a transport rule to a recipe found at the old center.
UniPoly transport_recipe(const UniPoly& f, const CRat& x0, TransportRule rule);

/// For each probe x0, classify the residual of the transported recipe
/// against the re-centered equation. Everything stays exact.
std::vector<Classification> check_transport(const TriPoly& F, const Recipe& base,
                                            TransportRule rule, const std::vector<CRat>& probes);

/// Solve the initial value problem re-centered at t (feasible set
/// f(x0 - t) = y0) by coefficient matching and return the recipe's value at
/// the new center, s(t) = f_t(0). Exact.
CRat first_idea_eval(const TriPoly& F, const InitialCondition& ic, const CRat& t, int degree,
                     const FinderOptions& opts = {});

struct WindowCheck {
    bool ok = false;
    double max_abs = 0.0;  ///< reported max, includes the 1.05 sampling safety factor
};

/// Evaluate the magnitude of the a-free residual of f against ode_at(F, t)
/// on the circle centered at -t/2 with radius |t|/2 (the boundary suffices
/// for a polynomial by the maximum-modulus principle) and compare the
/// reported max against eps.
WindowCheck check_good_window(const TriPoly& F, const UniPoly& f, const CRat& t, double eps,
                              int boundary_samples);

struct WalkEntry {
    CRat t_cumulative;
    CRat value;
    CRat step;
    Recipe recipe;
    bool has_recipe = false;  ///< false only for the initial entry
};

struct WalkTrace {
    std::vector<WalkEntry> entries;
};

/// Step-size walker: at each step find a recipe for the current equation
/// with f(0) = current value, evaluate it at the step, then re-center the
/// equation there. All arithmetic exact.
WalkTrace walk(const TriPoly& F, const InitialCondition& ic, const std::vector<CRat>& steps,
               int degree, const FinderOptions& opts = {});

}  // namespace insola
