#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "insola/recipe.hpp"
#include "insola/roots.hpp"

namespace insola {

/// One element of the solution relation: a root t* of the substituted
/// residual together with the recipe value there.
struct RelationPoint {
    std::complex<double> t;
    std::complex<double> value;
    int grade = 0;
    bool filtered_survivor = true;
    double residual_mag = 0.0;  ///< |F*(t)| after polishing
};

struct OracleSource {
    RefName name = RefName::Exp;
};

struct FinderSource {
    InitialCondition ic;
    int branch = 0;
    bool positive_slope = false;
    bool numeric_steps = false;
    int max_branches = 64;
};

struct InsolaConfig {
    TriPoly F;
    std::variant<OracleSource, FinderSource> recipe_source = OracleSource{};
    double alpha_star = 1e-3;
    int degree_min = 1;
    int degree_max = 39;
    bool filter = false;
    double dedupe_tol = 1e-8;
    double root_tol = 1e-10;
};

struct DegreeFailure {
    int grade = 0;
    std::string message;
};

struct InsolaResult {
    std::vector<RelationPoint> points;     ///< merged in ascending grade order
    std::vector<DegreeFailure> failures;   ///< degrees that failed, others still run
};

/// Dedupe both root lists (pairs within dedupe_tol collapse), then for every
/// deduped nonzero root of P remove the single nearest element of the
/// residual root list (ties broken towards the smaller index after sorting
/// by real part then imaginary part). Returns the survivors.
std::vector<std::complex<double>> filter_noninfinitesimal(
    std::vector<std::complex<double>> roots_fstar,
    const std::vector<std::complex<double>>& roots_p, double dedupe_tol);

/// The per-degree pipeline: recipe, residual, substitute alpha*, roots,
/// optional non-infinitesimal filtering, emit (t*, f(t*)). Degrees run
/// independently (INSOLA_THREADS caps parallelism); failures are collected
/// per degree without aborting the rest. Deterministic given the config.
InsolaResult run_insola(const InsolaConfig& cfg);

struct SweepEntry {
    double alpha_star = 0.0;
    double max_survivor_modulus = 0.0;  ///< 0 when no survivors at all
    InsolaResult result;
};

/// run_insola once per alpha value; summary of survivor-root moduli.
std::vector<SweepEntry> alpha_sweep(const InsolaConfig& cfg, const std::vector<double>& alphas);

/// Parallelism cap: INSOLA_THREADS if set, hardware concurrency otherwise.
int thread_cap();

}  // namespace insola
