#include "insola/hyper.hpp"

#include <vector>

namespace insola {

const char* to_string(ResidualClass c) {
    switch (c) {
        case ResidualClass::HyperSolution: return "HyperSolution";
        case ResidualClass::HyperTaylor: return "HyperTaylor";
        case ResidualClass::HyperLocal: return "HyperLocal";
        case ResidualClass::None: return "None";
    }
    return "?";
}

const char* to_string(Domain d) {
    return d == Domain::AllFinite ? "AllFinite" : "InfinitesimalOnly";
}

BiPoly hyper_diff(const UniPoly& f) {
    // (f(x+a) - f(x)) / a: for each c_k x^k the numerator is
    // c_k * sum_{j<k} C(k,j) x^j a^(k-j), always divisible by a.
    BiPoly out;
    for (int k = 0; k <= f.degree(); ++k) {
        const CRat c = f.coeff(k);
        if (c.is_zero()) continue;
        for (int j = 0; j < k; ++j)
            out.add_term({j, k - j - 1},
                         c * CRat(rat_binomial(static_cast<unsigned>(k), static_cast<unsigned>(j))));
    }
    return out;
}

BiPoly apply_ode(const TriPoly& F, const UniPoly& f) {
    const BiPoly zsub = hyper_diff(f);
    const BiPoly ysub = BiPoly::from_x_poly(f);

    auto powers = [](const BiPoly& base, int upto) {
        std::vector<BiPoly> p;
        p.push_back(BiPoly::constant(CRat(1)));
        for (int i = 1; i <= upto; ++i) p.push_back(p.back() * base);
        return p;
    };
    const std::vector<BiPoly> zp = powers(zsub, std::max(F.deg_z(), 0));
    const std::vector<BiPoly> yp = powers(ysub, std::max(F.deg_y(), 0));

    BiPoly out;
    for (const auto& [k, c] : F.terms()) {
        BiPoly term = zp[static_cast<std::size_t>(k.dz)] * yp[static_cast<std::size_t>(k.dy)];
        BiPoly shifted;
        for (const auto& [bk, bc] : term.terms())
            shifted.add_term({bk.dx + k.dx, bk.da}, c * bc);
        out += shifted;
    }
    return out;
}

namespace {

struct Decomposition {
    UniPoly P;
    BiPoly G;
};

Decomposition decompose(const BiPoly& residual) {
    Decomposition d;
    d.P = at_alpha_zero(residual);
    BiPoly infinitesimal = residual - BiPoly::from_x_poly(d.P);
    d.G = div_alpha_exact(infinitesimal);
    return d;
}

}  // namespace

bool hyper_solution_form(const BiPoly& residual) { return at_alpha_zero(residual).is_zero(); }

bool hyper_taylor_form(const BiPoly& residual, bool allow_zero_r) {
    Decomposition d = decompose(residual);
    if (d.P.is_zero()) return allow_zero_r;
    int n = d.P.degree();
    if (n < 1) return false;
    for (int k = 0; k < n; ++k)
        if (!d.P.coeff(k).is_zero()) return false;  // P must be a single monomial
    return d.G.deg_x() < n;
}

bool hyper_local_form(const BiPoly& residual) {
    Decomposition d = decompose(residual);
    if (d.P.is_zero()) return true;
    if (!d.P.coeff(0).is_zero()) return false;
    return d.G.deg_x() < d.P.degree();
}

Classification classify(const BiPoly& residual) {
    Decomposition d = decompose(residual);
    Classification out;
    out.P = d.P;
    out.G = d.G;

    if (d.P.is_zero()) {
        out.kind = ResidualClass::HyperSolution;
        out.domain = Domain::AllFinite;
        return out;
    }
    out.domain = Domain::InfinitesimalOnly;

    const int n = d.P.degree();
    bool monomial = n >= 1;
    for (int k = 0; monomial && k < n; ++k)
        if (!d.P.coeff(k).is_zero()) monomial = false;
    if (monomial && d.G.deg_x() < n) {
        out.kind = ResidualClass::HyperTaylor;
        out.r = d.P.coeff(n);
        out.n = n;
        return out;
    }

    if (d.P.coeff(0).is_zero() && d.G.deg_x() < d.P.degree()) {
        out.kind = ResidualClass::HyperLocal;
        return out;
    }

    out.kind = ResidualClass::None;
    return out;
}

}  // namespace insola
