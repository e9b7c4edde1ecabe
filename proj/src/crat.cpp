#include "insola/crat.hpp"

#include <mpfr.h>

#include <stdexcept>

namespace insola {

double rat_to_double(const Rat& q) {
    // mpq_get_d truncates; go through a 53-bit MPFR value for correct
    // round-to-nearest, which the degree-40 factorial ratios need.
    mpfr_t x;
    mpfr_init2(x, 53);
    mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDN);
    double d = mpfr_get_d(x, MPFR_RNDN);
    mpfr_clear(x);
    return d;
}

bool rat_sqrt_exact(const Rat& q, Rat* root) {
    if (sgn(q) < 0) return false;
    if (sgn(q) == 0) {
        *root = 0;
        return true;
    }
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    *root = Rat(rn, rd);  // already in lowest terms since num/den were
    return true;
}

CRat& CRat::operator/=(const CRat& o) {
    if (o.is_zero()) throw std::domain_error("division by zero CRat");
    Rat n2 = o.norm2();
    Rat r = (re * o.re + im * o.im) / n2;
    Rat i2 = (im * o.re - re * o.im) / n2;
    re = std::move(r);
    im = std::move(i2);
    return *this;
}

std::string CRat::str() const {
    if (is_zero()) return "0";
    std::string out;
    if (sgn(re) != 0) out += re.get_str();
    if (sgn(im) != 0) {
        if (!out.empty() && sgn(im) > 0) out += "+";
        if (im == -1)
            out += "-";
        else if (im != 1)
            out += im.get_str();
        out += "i";
    }
    return out;
}

bool crat_sqrt_exact(const CRat& v, CRat* root) {
    if (v.is_zero()) {
        *root = CRat();
        return true;
    }
    if (v.is_real()) {
        Rat r;
        if (sgn(v.re) > 0) {
            if (!rat_sqrt_exact(v.re, &r)) return false;
            *root = CRat(r);
            return true;
        }
        if (!rat_sqrt_exact(-v.re, &r)) return false;
        *root = CRat(Rat(0), r);
        return true;
    }
    // v = u + wi with w != 0. Need m = |v| rational and (u+m)/2 a rational
    // square; then root = p + (w/2p) i.
    Rat m;
    if (!rat_sqrt_exact(v.norm2(), &m)) return false;
    Rat half_sum = (v.re + m) / 2;
    Rat p;
    if (!rat_sqrt_exact(half_sum, &p)) return false;
    if (sgn(p) == 0) return false;  // cannot happen for w != 0, kept as a guard
    Rat q = v.im / (2 * p);
    *root = CRat(p, q);
    return true;
}

Rat rat_factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rat(f);
}

Rat rat_binomial(unsigned n, unsigned k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rat(b);
}

}  // namespace insola
