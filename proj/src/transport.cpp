#include "insola/transport.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace insola {

const char* to_string(TransportRule r) {
    switch (r) {
        case TransportRule::Identity: return "identity";
        case TransportRule::Shift: return "shift";
        case TransportRule::Scale: return "scale";
    }
    return "?";
}

bool rule_from_string(const std::string& s, TransportRule* out) {
    if (s == "identity") *out = TransportRule::Identity;
    else if (s == "shift") *out = TransportRule::Shift;
    else if (s == "scale") *out = TransportRule::Scale;
    else return false;
    return true;
}

TriPoly ode_at(const TriPoly& F, const CRat& x0) { return shift_x(F, x0); }

UniPoly transport_recipe(const UniPoly& f, const CRat& x0, TransportRule rule) {
    switch (rule) {
        case TransportRule::Identity: return f;
        case TransportRule::Shift: return shift_x(f, x0);
        case TransportRule::Scale: return scale_x(f, x0);
    }
    return f;
}

std::vector<Classification> check_transport(const TriPoly& F, const Recipe& base,
                                            TransportRule rule, const std::vector<CRat>& probes) {
    std::vector<Classification> out;
    out.reserve(probes.size());
    for (const CRat& x0 : probes) {
        UniPoly moved = transport_recipe(base.f, x0, rule);
        out.push_back(classify(apply_ode(ode_at(F, x0), moved)));
    }
    return out;
}

CRat first_idea_eval(const TriPoly& F, const InitialCondition& ic, const CRat& t, int degree,
                     const FinderOptions& opts) {
    TriPoly shifted = ode_at(F, t);
    InitialCondition moved{ic.x0 - t, ic.y0};
    std::vector<Recipe> recipes = find_recipes(shifted, degree, moved, opts);
    if (recipes.empty())
        throw EmptyFeasibleSet("no degree-" + std::to_string(degree) +
                               " recipe satisfies f(" + moved.x0.str() + ") = " + ic.y0.str());
    return recipes.front().f.coeff(0);
}

WindowCheck check_good_window(const TriPoly& F, const UniPoly& f, const CRat& t, double eps,
                              int boundary_samples) {
    if (t.is_zero()) throw std::invalid_argument("window center step t must be nonzero");
    if (boundary_samples < 16) throw std::invalid_argument("need at least 16 boundary samples");

    UniPoly st_part = at_alpha_zero(apply_ode(ode_at(F, t), f));
    WindowCheck out;
    if (st_part.is_zero()) {
        out.ok = true;
        out.max_abs = 0.0;
        return out;
    }
    FloatPoly p = to_float(st_part);
    std::complex<double> tc = t.to_complex_double();
    std::complex<double> center = -0.5 * tc;
    double radius = 0.5 * std::abs(tc);

    double max_abs = 0.0;
    for (int j = 0; j < boundary_samples; ++j) {
        double th = 2.0 * std::numbers::pi * j / boundary_samples;
        std::complex<double> zp = center + std::polar(radius, th);
        max_abs = std::max(max_abs, std::abs(p.eval(zp)));
    }
    out.max_abs = 1.05 * max_abs;  // safety factor over the sampling grid
    out.ok = out.max_abs < eps;
    return out;
}

WalkTrace walk(const TriPoly& F, const InitialCondition& ic, const std::vector<CRat>& steps,
               int degree, const FinderOptions& opts) {
    WalkTrace out;
    TriPoly current = ode_at(F, ic.x0);
    CRat t_cum = ic.x0;
    CRat value = ic.y0;
    out.entries.push_back({t_cum, value, CRat(0), Recipe{}, false});

    for (std::size_t k = 0; k < steps.size(); ++k) {
        const CRat& step = steps[k];
        if (step.is_zero())
            throw std::invalid_argument("walk step " + std::to_string(k + 1) + " is zero");
        std::vector<Recipe> recipes;
        try {
            recipes = find_recipes(current, degree, {CRat(0), value}, opts);
        } catch (const Error& e) {
            throw Error("walk step " + std::to_string(k + 1) + ": " + e.what());
        }
        if (recipes.empty())
            throw EmptyFeasibleSet("walk step " + std::to_string(k + 1));
        const Recipe& r = recipes.front();
        value = r.f.eval(step);
        t_cum += step;
        current = ode_at(current, step);
        out.entries.push_back({t_cum, value, step, r, true});
    }
    return out;
}

}  // namespace insola
