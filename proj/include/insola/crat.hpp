#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

namespace insola {

/// Exact arbitrary-precision rational. Always kept in lowest terms.
using Rat = mpq_class;

/// Nearest double (round-to-nearest-even), +-inf when the value leaves double range.
double rat_to_double(const Rat& q);

/// True iff q is the square of a rational; then *root is the nonnegative square root.
bool rat_sqrt_exact(const Rat& q, Rat* root);

/// Complex number with exact rational real and imaginary parts.
/// Equality is exact and all arithmetic is exact; this is the coefficient
/// field for every symbolic computation in the library.
struct CRat {
    Rat re;
    Rat im;

    CRat() : re(0), im(0) {}
    CRat(long r) : re(r), im(0) {}          // NOLINT(google-explicit-constructor)
    CRat(const Rat& r) : re(r), im(0) {}    // NOLINT(google-explicit-constructor)
    CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    CRat(long num, long den) : re(num, den), im(0) { re.canonicalize(); }

    static CRat i() { return CRat(Rat(0), Rat(1)); }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }

    CRat conj() const { return CRat(re, -im); }

    /// |v|^2 = re^2 + im^2, exact.
    Rat norm2() const { return re * re + im * im; }

    CRat operator-() const { return CRat(-re, -im); }

    CRat& operator+=(const CRat& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    CRat& operator-=(const CRat& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    CRat& operator*=(const CRat& o) {
        Rat r = re * o.re - im * o.im;
        Rat i2 = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i2);
        return *this;
    }
    CRat& operator/=(const CRat& o);

    friend CRat operator+(CRat a, const CRat& b) { return a += b; }
    friend CRat operator-(CRat a, const CRat& b) { return a -= b; }
    friend CRat operator*(CRat a, const CRat& b) { return a *= b; }
    friend CRat operator/(CRat a, const CRat& b) { return a /= b; }

    friend bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const CRat& a, const CRat& b) { return !(a == b); }

    /// Fixed total order used wherever determinism matters: by real part,
    /// then by imaginary part.
    friend bool operator<(const CRat& a, const CRat& b) {
        int c = cmp(a.re, b.re);
        if (c != 0) return c < 0;
        return cmp(a.im, b.im) < 0;
    }

    std::complex<double> to_complex_double() const {
        return {rat_to_double(re), rat_to_double(im)};
    }

    /// Compact exact rendering: "3/8", "-1/2i", "1/2+3/4i", "0".
    std::string str() const;
};

/// sqrt in Q(i) when it exists; returns false otherwise. The returned root w
/// satisfies w*w == v exactly and has re(w) > 0, or re(w) == 0 and im(w) >= 0.
bool crat_sqrt_exact(const CRat& v, CRat* root);

/// Exact factorial as a rational (helper for Taylor coefficient tables).
Rat rat_factorial(unsigned n);

/// Exact binomial coefficient.
Rat rat_binomial(unsigned n, unsigned k);

}  // namespace insola
