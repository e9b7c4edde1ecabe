#include "insola/poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace insola {

// ---------------------------------------------------------------------------
// UniPoly helpers
// ---------------------------------------------------------------------------

UniPoly scale_x(const UniPoly& f, const CRat& x0) {
    if (x0.is_zero()) throw ZeroScale();
    std::vector<CRat> out = f.coeffs();
    CRat p(1);
    for (std::size_t k = 1; k < out.size(); ++k) {
        p *= x0;
        out[k] /= p;
    }
    return UniPoly(std::move(out));
}

FloatPoly to_float(const UniPoly& f) {
    FloatPoly out;
    out.coeffs.reserve(f.coeffs().size());
    for (std::size_t k = 0; k < f.coeffs().size(); ++k) {
        const CRat& c = f.coeffs()[k];
        std::complex<double> d = c.to_complex_double();
        if (std::isinf(d.real()) || std::isinf(d.imag()))
            throw Overflow("(" + c.str() + ")*x^" + std::to_string(k));
        out.coeffs.push_back(d);
    }
    while (!out.coeffs.empty() && out.coeffs.back() == std::complex<double>(0.0, 0.0))
        out.coeffs.pop_back();
    return out;
}

// ---------------------------------------------------------------------------
// Monomial rendering shared by the printers
// ---------------------------------------------------------------------------

namespace {

// Renders c * v1^e1 * ... ; returns the string without a leading sign and
// reports the sign separately so terms can be joined with " + " / " - ".
std::pair<int, std::string> render_term(const CRat& c,
                                        const std::vector<std::pair<const char*, int>>& vars) {
    std::string varpart;
    for (const auto& [name, e] : vars) {
        if (e == 0) continue;
        if (!varpart.empty()) varpart += "*";
        varpart += name;
        if (e > 1) varpart += "^" + std::to_string(e);
    }

    int sign = 1;
    std::string coeff;
    if (sgn(c.im) == 0) {
        sign = sgn(c.re) < 0 ? -1 : 1;
        Rat mag = abs(c.re);
        if (mag != 1 || varpart.empty()) coeff = mag.get_str();
    } else if (sgn(c.re) == 0) {
        sign = sgn(c.im) < 0 ? -1 : 1;
        Rat mag = abs(c.im);
        coeff = (mag == 1) ? "i" : mag.get_str() + "*i";
    } else {
        // Mixed complex coefficient: parenthesize, keep overall sign positive.
        Rat imag = abs(c.im);
        coeff = "(" + c.re.get_str() + (sgn(c.im) < 0 ? " - " : " + ") +
                (imag == 1 ? "i" : imag.get_str() + "*i") + ")";
    }

    std::string body;
    if (coeff.empty())
        body = varpart;
    else if (varpart.empty())
        body = coeff;
    else
        body = coeff + "*" + varpart;
    return {sign, body};
}

std::string join_terms(std::vector<std::pair<int, std::string>> terms) {
    if (terms.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i == 0)
            out += terms[i].first < 0 ? "-" : "";
        else
            out += terms[i].first < 0 ? " - " : " + ";
        out += terms[i].second;
    }
    return out;
}

}  // namespace

std::string to_string(const UniPoly& f) {
    std::vector<std::pair<int, std::string>> terms;
    for (int k = f.degree(); k >= 0; --k) {
        CRat c = f.coeff(k);
        if (c.is_zero()) continue;
        terms.push_back(render_term(c, {{"x", k}}));
    }
    return join_terms(std::move(terms));
}

// ---------------------------------------------------------------------------
// BiPoly
// ---------------------------------------------------------------------------

BiPoly BiPoly::from_x_poly(const UniPoly& f) {
    BiPoly p;
    for (int k = 0; k <= f.degree(); ++k) p.add_term({k, 0}, f.coeff(k));
    return p;
}

int BiPoly::deg_x() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.dx);
    return d;
}

int BiPoly::deg_a() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.da);
    return d;
}

BiPoly BiPoly::operator-() const {
    BiPoly p;
    for (const auto& [k, c] : terms_) p.terms_.emplace(k, -c);
    return p;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly out;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_)
            out.add_term({ka.dx + kb.dx, ka.da + kb.da}, ca * cb);
    return out;
}

BiPoly operator*(const CRat& s, const BiPoly& p) {
    BiPoly out;
    if (s.is_zero()) return out;
    for (const auto& [k, c] : p.terms_) out.terms_.emplace(k, s * c);
    return out;
}

BiPoly BiPoly::pow(int e) const {
    BiPoly acc = BiPoly::constant(CRat(1));
    for (int i = 0; i < e; ++i) acc = acc * *this;
    return acc;
}

CRat BiPoly::eval(const CRat& x, const CRat& a) const {
    CRat acc;
    for (const auto& [k, c] : terms_) {
        CRat t = c;
        for (int i = 0; i < k.dx; ++i) t *= x;
        for (int i = 0; i < k.da; ++i) t *= a;
        acc += t;
    }
    return acc;
}

BiPoly shift_x(const BiPoly& p, const CRat& x0) {
    if (x0.is_zero()) return p;
    BiPoly out;
    for (const auto& [k, c] : p.terms()) {
        // (x + x0)^dx expanded binominally; a-degree carried along.
        CRat power(1);
        for (int j = k.dx; j >= 0; --j) {
            out.add_term({j, k.da}, c * CRat(rat_binomial(k.dx, j)) * power);
            power *= x0;
        }
    }
    return out;
}

BiPoly div_alpha_exact(const BiPoly& p) {
    BiPoly out;
    for (const auto& [k, c] : p.terms()) {
        if (k.da < 1) {
            auto named = render_term(c, {{"x", k.dx}, {"a", k.da}});
            throw NotDivisibleByAlpha((named.first < 0 ? "-" : "") + named.second);
        }
        out.add_term({k.dx, k.da - 1}, c);
    }
    return out;
}

UniPoly at_alpha_zero(const BiPoly& p) {
    int dx = p.deg_x();
    std::vector<CRat> coeffs(static_cast<std::size_t>(std::max(dx, -1) + 1));
    for (const auto& [k, c] : p.terms())
        if (k.da == 0) coeffs[static_cast<std::size_t>(k.dx)] = c;
    return UniPoly(std::move(coeffs));
}

FloatPoly substitute_alpha(const BiPoly& p, double alpha_star) {
    if (!(alpha_star > 0.0)) throw std::invalid_argument("alpha_star must be positive");
    int dx = p.deg_x();
    int da = p.deg_a();
    std::vector<double> apow(static_cast<std::size_t>(std::max(da, 0)) + 1, 1.0);
    for (std::size_t i = 1; i < apow.size(); ++i) apow[i] = apow[i - 1] * alpha_star;

    FloatPoly out;
    out.coeffs.assign(static_cast<std::size_t>(std::max(dx, -1) + 1), {0.0, 0.0});
    for (const auto& [k, c] : p.terms()) {
        std::complex<double> d = c.to_complex_double();
        if (std::isinf(d.real()) || std::isinf(d.imag())) {
            auto named = render_term(c, {{"x", k.dx}, {"a", k.da}});
            throw Overflow((named.first < 0 ? "-" : "") + named.second);
        }
        out.coeffs[static_cast<std::size_t>(k.dx)] += d * apow[static_cast<std::size_t>(k.da)];
    }
    while (!out.coeffs.empty() && out.coeffs.back() == std::complex<double>(0.0, 0.0))
        out.coeffs.pop_back();
    return out;
}

std::string to_string(const BiPoly& p) {
    // Descending total degree, then descending x-degree.
    std::vector<BiKey> keys;
    keys.reserve(p.terms().size());
    for (const auto& [k, c] : p.terms()) keys.push_back(k);
    std::sort(keys.begin(), keys.end(), [](const BiKey& l, const BiKey& r) {
        int tl = l.dx + l.da, tr = r.dx + r.da;
        if (tl != tr) return tl > tr;
        return l.dx > r.dx;
    });
    std::vector<std::pair<int, std::string>> terms;
    for (const BiKey& k : keys)
        terms.push_back(render_term(p.coeff(k.dx, k.da), {{"x", k.dx}, {"a", k.da}}));
    return join_terms(std::move(terms));
}

// ---------------------------------------------------------------------------
// TriPoly
// ---------------------------------------------------------------------------

int TriPoly::deg_z() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.dz);
    return d;
}
int TriPoly::deg_y() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.dy);
    return d;
}
int TriPoly::deg_x() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.dx);
    return d;
}

TriPoly TriPoly::operator-() const {
    TriPoly p;
    for (const auto& [k, c] : terms_) p.terms_.emplace(k, -c);
    return p;
}

TriPoly& TriPoly::operator+=(const TriPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

TriPoly& TriPoly::operator-=(const TriPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

TriPoly operator*(const TriPoly& a, const TriPoly& b) {
    TriPoly out;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_)
            out.add_term({ka.dz + kb.dz, ka.dy + kb.dy, ka.dx + kb.dx}, ca * cb);
    return out;
}

TriPoly operator*(const CRat& s, const TriPoly& p) {
    TriPoly out;
    if (s.is_zero()) return out;
    for (const auto& [k, c] : p.terms_) out.terms_.emplace(k, s * c);
    return out;
}

TriPoly TriPoly::pow(int e) const {
    TriPoly acc = TriPoly::constant(CRat(1));
    for (int i = 0; i < e; ++i) acc = acc * *this;
    return acc;
}

UniPoly TriPoly::as_x_poly() const {
    if (!is_x_only()) throw std::logic_error("polynomial involves z or y");
    std::vector<CRat> coeffs(static_cast<std::size_t>(std::max(deg_x(), -1) + 1));
    for (const auto& [k, c] : terms_) coeffs[static_cast<std::size_t>(k.dx)] = c;
    return UniPoly(std::move(coeffs));
}

TriPoly shift_x(const TriPoly& p, const CRat& x0) {
    if (x0.is_zero()) return p;
    TriPoly out;
    for (const auto& [k, c] : p.terms()) {
        CRat power(1);
        for (int j = k.dx; j >= 0; --j) {
            out.add_term({k.dz, k.dy, j}, c * CRat(rat_binomial(k.dx, j)) * power);
            power *= x0;
        }
    }
    return out;
}

std::string to_string(const TriPoly& p) {
    std::vector<TriKey> keys;
    keys.reserve(p.terms().size());
    for (const auto& [k, c] : p.terms()) keys.push_back(k);
    std::sort(keys.begin(), keys.end(), [](const TriKey& l, const TriKey& r) {
        int tl = l.dz + l.dy + l.dx, tr = r.dz + r.dy + r.dx;
        if (tl != tr) return tl > tr;
        if (l.dz != r.dz) return l.dz > r.dz;
        if (l.dy != r.dy) return l.dy > r.dy;
        return l.dx > r.dx;
    });
    std::vector<std::pair<int, std::string>> terms;
    for (const TriKey& k : keys)
        terms.push_back(
            render_term(p.coeff(k.dz, k.dy, k.dx), {{"z", k.dz}, {"y", k.dy}, {"x", k.dx}}));
    return join_terms(std::move(terms));
}

}  // namespace insola
