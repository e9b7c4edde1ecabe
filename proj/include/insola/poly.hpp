#pragma once

#include <complex>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "insola/crat.hpp"
#include "insola/errors.hpp"

namespace insola {

// ---------------------------------------------------------------------------
// Dense univariate polynomial over an exact coefficient ring.
// ---------------------------------------------------------------------------

/// Dense polynomial with coefficients indexed by degree. The trailing
/// (highest-degree) coefficient is nonzero unless the polynomial is zero.
/// R must provide zero-default construction, +=, *, unary -, == and is_zero().
template <class R>
class DensePoly {
public:
    DensePoly() = default;
    explicit DensePoly(std::vector<R> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static DensePoly constant(R c) {
        DensePoly p;
        if (!c.is_zero()) p.coeffs_.push_back(std::move(c));
        return p;
    }

    static DensePoly monomial(R c, int deg) {
        DensePoly p;
        if (!c.is_zero()) {
            p.coeffs_.assign(static_cast<std::size_t>(deg) + 1, R());
            p.coeffs_.back() = std::move(c);
        }
        return p;
    }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    /// Coefficient of x^k; zero beyond the degree.
    R coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(coeffs_.size())) return R();
        return coeffs_[static_cast<std::size_t>(k)];
    }

    const std::vector<R>& coeffs() const { return coeffs_; }

    DensePoly operator-() const {
        DensePoly p(*this);
        for (auto& c : p.coeffs_) c = -c;
        return p;
    }

    DensePoly& operator+=(const DensePoly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        trim();
        return *this;
    }
    DensePoly& operator-=(const DensePoly& o) { return *this += -o; }

    friend DensePoly operator+(DensePoly a, const DensePoly& b) { return a += b; }
    friend DensePoly operator-(DensePoly a, const DensePoly& b) { return a -= b; }

    friend DensePoly operator*(const DensePoly& a, const DensePoly& b) {
        if (a.is_zero() || b.is_zero()) return DensePoly();
        std::vector<R> out(a.coeffs_.size() + b.coeffs_.size() - 1, R());
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return DensePoly(std::move(out));
    }

    friend DensePoly operator*(const R& s, const DensePoly& p) {
        DensePoly out;
        if (s.is_zero()) return out;
        out.coeffs_ = p.coeffs_;
        for (auto& c : out.coeffs_) c = s * c;
        out.trim();
        return out;
    }

    friend bool operator==(const DensePoly& a, const DensePoly& b) {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const DensePoly& a, const DensePoly& b) { return !(a == b); }

    /// Horner evaluation at a point of the coefficient ring.
    R eval(const R& x) const {
        R acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    DensePoly derivative() const {
        if (coeffs_.size() <= 1) return DensePoly();
        std::vector<R> out(coeffs_.size() - 1, R());
        for (std::size_t k = 1; k < coeffs_.size(); ++k) out[k - 1] = R(long(k)) * coeffs_[k];
        return DensePoly(std::move(out));
    }

    /// Coefficients of p(x + c), computed by repeated synthetic division; exact.
    DensePoly taylor_shift(const R& c) const {
        if (c.is_zero() || is_zero()) return *this;
        std::vector<R> a = coeffs_;
        const std::size_t n = a.size();
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = n - 1; j >= i + 1; --j) a[j - 1] += c * a[j];
        return DensePoly(std::move(a));
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<R> coeffs_;
};

/// f in C[X] with exact complex-rational coefficients.
using UniPoly = DensePoly<CRat>;

/// Rescale the argument: coefficients of f(x / x0). Throws ZeroScale for x0 = 0.
UniPoly scale_x(const UniPoly& f, const CRat& x0);

/// Shift the argument: coefficients of f(x + x0).
inline UniPoly shift_x(const UniPoly& f, const CRat& x0) { return f.taylor_shift(x0); }

std::string to_string(const UniPoly& f);

// ---------------------------------------------------------------------------
// Double-precision polynomial (the numeric end of the pipeline).
// ---------------------------------------------------------------------------

/// Dense complex-double polynomial; produced only by rational-to-float
/// conversion, never fed back into symbolic code.
struct FloatPoly {
    std::vector<std::complex<double>> coeffs;  // index = degree in x

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }

    std::complex<double> eval(std::complex<double> x) const {
        std::complex<double> acc = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
};

/// Per-coefficient nearest-double conversion. Throws Overflow if a
/// coefficient leaves double range.
FloatPoly to_float(const UniPoly& f);

// ---------------------------------------------------------------------------
// Sparse polynomial in (x, a) where `a` is the formal infinitesimal.
// ---------------------------------------------------------------------------

struct BiKey {
    int dx = 0;
    int da = 0;

    friend bool operator<(const BiKey& l, const BiKey& r) {
        return l.dx != r.dx ? l.dx < r.dx : l.da < r.da;
    }
    friend bool operator==(const BiKey& l, const BiKey& r) {
        return l.dx == r.dx && l.da == r.da;
    }
};

/// Sparse polynomial in (x, a) over CRat. Holds difference-quotient residuals;
/// the `a` indeterminate is only ever turned into a number by substitute_alpha.
class BiPoly {
public:
    BiPoly() = default;

    static BiPoly constant(CRat c) {
        BiPoly p;
        p.add_term({0, 0}, std::move(c));
        return p;
    }
    static BiPoly x() {
        BiPoly p;
        p.add_term({1, 0}, CRat(1));
        return p;
    }
    static BiPoly alpha() {
        BiPoly p;
        p.add_term({0, 1}, CRat(1));
        return p;
    }
    /// Embed f(x) with a-degree 0.
    static BiPoly from_x_poly(const UniPoly& f);

    void add_term(const BiKey& k, const CRat& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<BiKey, CRat>& terms() const { return terms_; }

    CRat coeff(int dx, int da) const {
        auto it = terms_.find({dx, da});
        return it == terms_.end() ? CRat() : it->second;
    }

    int deg_x() const;
    int deg_a() const;

    BiPoly operator-() const;
    BiPoly& operator+=(const BiPoly& o);
    BiPoly& operator-=(const BiPoly& o);
    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator*(const CRat& s, const BiPoly& p);
    BiPoly pow(int e) const;

    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

    /// Exact evaluation at (x, a).
    CRat eval(const CRat& x, const CRat& a) const;

private:
    std::map<BiKey, CRat> terms_;
};

/// Substitution x -> x + x0 (binomial expansion; the a variable is untouched).
BiPoly shift_x(const BiPoly& p, const CRat& x0);

/// Exact division by a. Every term must have a-degree >= 1, otherwise
/// NotDivisibleByAlpha is thrown naming the offending monomial.
BiPoly div_alpha_exact(const BiPoly& p);

/// The a-free part P(x) of p = P(x) + a*G(x,a).
UniPoly at_alpha_zero(const BiPoly& p);

/// Replace a by the real value alpha_star and collect a dense complex-double
/// polynomial in x. Coefficients are rounded to nearest double first; a
/// coefficient outside double range raises Overflow with the monomial.
FloatPoly substitute_alpha(const BiPoly& p, double alpha_star);

std::string to_string(const BiPoly& p);

// ---------------------------------------------------------------------------
// Sparse polynomial in (z, y, x): the differential equation F.
// ---------------------------------------------------------------------------

struct TriKey {
    int dz = 0;
    int dy = 0;
    int dx = 0;

    friend bool operator<(const TriKey& l, const TriKey& r) {
        if (l.dz != r.dz) return l.dz < r.dz;
        if (l.dy != r.dy) return l.dy < r.dy;
        return l.dx < r.dx;
    }
    friend bool operator==(const TriKey& l, const TriKey& r) {
        return l.dz == r.dz && l.dy == r.dy && l.dx == r.dx;
    }
};

/// Sparse polynomial in (z, y, x) over CRat; z stands for the derivative
/// slot and y for the function slot of a first-order equation F(z, y, x).
class TriPoly {
public:
    TriPoly() = default;

    static TriPoly constant(CRat c) {
        TriPoly p;
        p.add_term({0, 0, 0}, std::move(c));
        return p;
    }
    static TriPoly z() { return var(1, 0, 0); }
    static TriPoly y() { return var(0, 1, 0); }
    static TriPoly x() { return var(0, 0, 1); }

    void add_term(const TriKey& k, const CRat& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<TriKey, CRat>& terms() const { return terms_; }

    CRat coeff(int dz, int dy, int dx) const {
        auto it = terms_.find({dz, dy, dx});
        return it == terms_.end() ? CRat() : it->second;
    }

    int deg_z() const;
    int deg_y() const;
    int deg_x() const;

    TriPoly operator-() const;
    TriPoly& operator+=(const TriPoly& o);
    TriPoly& operator-=(const TriPoly& o);
    friend TriPoly operator+(TriPoly a, const TriPoly& b) { return a += b; }
    friend TriPoly operator-(TriPoly a, const TriPoly& b) { return a -= b; }
    friend TriPoly operator*(const TriPoly& a, const TriPoly& b);
    friend TriPoly operator*(const CRat& s, const TriPoly& p);
    TriPoly pow(int e) const;

    friend bool operator==(const TriPoly& a, const TriPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const TriPoly& a, const TriPoly& b) { return !(a == b); }

    /// True iff neither z nor y occurs, i.e. the polynomial lives in C[X].
    bool is_x_only() const { return deg_z() <= 0 && deg_y() <= 0; }
    /// Conversion to C[X]; requires is_x_only().
    UniPoly as_x_poly() const;

private:
    static TriPoly var(int dz, int dy, int dx) {
        TriPoly p;
        p.add_term({dz, dy, dx}, CRat(1));
        return p;
    }

    std::map<TriKey, CRat> terms_;
};

/// Substitution x -> x + x0 on the x variable only; exact.
TriPoly shift_x(const TriPoly& p, const CRat& x0);

/// Canonical text form; parse_ode(to_string(F)) == F.
std::string to_string(const TriPoly& p);

inline std::ostream& operator<<(std::ostream& os, const UniPoly& p) { return os << to_string(p); }
inline std::ostream& operator<<(std::ostream& os, const BiPoly& p) { return os << to_string(p); }
inline std::ostream& operator<<(std::ostream& os, const TriPoly& p) { return os << to_string(p); }

}  // namespace insola
