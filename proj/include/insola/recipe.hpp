#pragma once

#include <map>
#include <string>
#include <vector>

#include "insola/hyper.hpp"
#include "insola/poly.hpp"

namespace insola {

/// Sparse multivariate polynomial in the not-yet-determined template
/// coefficients c_0, c_1, ... of a recipe, over CRat. This is what a
/// coefficient-matching step equation looks like before it is solved.
class CoefExpr {
public:
    CoefExpr() = default;
    CoefExpr(long v) {  // NOLINT(google-explicit-constructor)
        if (v != 0) terms_.emplace(std::vector<int>{}, CRat(v));
    }

    static CoefExpr constant(CRat c) {
        CoefExpr e;
        if (!c.is_zero()) e.terms_.emplace(std::vector<int>{}, std::move(c));
        return e;
    }
    static CoefExpr unknown(int id) {
        CoefExpr e;
        std::vector<int> key(static_cast<std::size_t>(id) + 1, 0);
        key.back() = 1;
        e.terms_.emplace(std::move(key), CRat(1));
        return e;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    CRat constant_value() const {
        return terms_.empty() ? CRat() : terms_.begin()->second;
    }

    CoefExpr operator-() const;
    CoefExpr& operator+=(const CoefExpr& o);
    friend CoefExpr operator+(CoefExpr a, const CoefExpr& b) { return a += b; }
    friend CoefExpr operator-(CoefExpr a, const CoefExpr& b) { return a += -b; }
    friend CoefExpr operator*(const CoefExpr& a, const CoefExpr& b);
    friend bool operator==(const CoefExpr& a, const CoefExpr& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const CoefExpr& a, const CoefExpr& b) { return !(a == b); }

    /// Sorted ids of unknowns that actually occur.
    std::vector<int> unknowns() const;
    int degree_in(int id) const;

    /// Replace unknown `id` by `value` and expand.
    CoefExpr substitute(int id, const CoefExpr& value) const;

    /// Coefficient list (index = power of the unknown); requires that `id`
    /// is the only unknown present.
    std::vector<CRat> univariate_in(int id) const;

    /// Splits a polynomial linear in `id` as A*u_id + B; fails (returns
    /// false) if `id` occurs with power >= 2.
    bool split_linear(int id, CoefExpr* a_out, CoefExpr* b_out) const;

    std::string str() const;

private:
    void add(const std::vector<int>& key, const CRat& c);
    static std::vector<int> trimmed(std::vector<int> key);

    // exponent vector (index = unknown id, trailing zeros trimmed) -> coefficient
    std::map<std::vector<int>, CRat> terms_;
};

/// Requirement f(x0) = y0 imposed on a recipe.
struct InitialCondition {
    CRat x0;
    CRat y0;
};

/// One decision taken during coefficient matching. `step` is the monomial
/// index of the matching equation (-1 for the initial-condition row);
/// free_default entries record unconstrained coefficients set to zero.
struct BranchStep {
    int step = 0;
    int unknown = 0;
    CRat chosen;
    std::vector<CRat> all_roots;
    bool free_default = false;
};

/// A polynomial computation rule together with how it was found.
struct Recipe {
    UniPoly f;
    int degree = 0;
    std::vector<BranchStep> branch_path;
    InitialCondition initial;
    bool exact = true;  ///< false when a step was solved in floating point
};

struct FinderOptions {
    int max_branches = 64;
    bool positive_slope = false;  ///< keep only branches with real positive x-coefficient
    bool numeric_steps = false;   ///< double-precision fallback for unsolvable steps
};

/// Coefficient matching at center 0: fixes f(ic.x0) = y0, then walks the
/// monomials x^k of the residual's a-free part for k = 0..degree-1, solving
/// each equation for its single remaining unknown (branching on multiple
/// roots) or eliminating the newest unknown when the equation is linear in
/// it. Returns every completed branch in deterministic order.
std::vector<Recipe> find_recipes(const TriPoly& F, int degree, const InitialCondition& ic,
                                 const FinderOptions& opts = {});

/// Built-in exact reference expansions used in place of the finder.
enum class RefName { Exp, Ln1p, Sin, InvSquare, ExpNest, CubeSquare };

const char* to_string(RefName n);
bool ref_from_string(const std::string& s, RefName* out);

/// Exact rational expansion at center 0, truncated at x^degree. ExpNest uses
/// the recurrence (k+1)c_{k+1} = 2c_k - 3k c_k - 3(k-1)c_{k-1} - (k-2)c_{k-2}
/// seeded with a rational constant term matching e^-1 to ~1e-37.
UniPoly taylor_reference(RefName name, int degree);

/// Closed-form value of the reference function (double precision).
std::complex<double> reference_value(RefName name, std::complex<double> t);

/// Coefficients of x^0, x^1, ... of the a-free residual with every template
/// coefficient left symbolic (unknown id k = coefficient of x^k).
std::vector<CoefExpr> symbolic_st_coeffs(const TriPoly& F, int degree);

}  // namespace insola
