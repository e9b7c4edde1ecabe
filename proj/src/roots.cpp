#include "insola/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace insola {

namespace {

using cplx = std::complex<double>;

constexpr double kStripRatio = 1e-14;
constexpr int kMaxSweeps = 400;

double max_coeff_mag(const std::vector<cplx>& c) {
    double m = 0.0;
    for (const cplx& v : c) m = std::max(m, std::abs(v));
    return m;
}

std::vector<cplx> strip_leading(std::vector<cplx> c) {
    const double cutoff = kStripRatio * max_coeff_mag(c);
    while (c.size() > 1 && std::abs(c.back()) <= cutoff) c.pop_back();
    return c;
}

struct EvalResult {
    cplx newton;       // p(z)/p'(z), computed in a scale-safe form
    double log_abs_p;  // ln |p(z)|
    double log_err;    // ln of the Horner rounding-error scale at z
    bool derivative_ok;
};

// Horner evaluation of p and p' together with a running magnitude sum used
// as the attainable-accuracy scale. For |z| > 1 the reversed polynomial is
// evaluated at 1/z so nothing overflows.
EvalResult eval_with_newton(const std::vector<cplx>& c, cplx z) {
    const std::size_t n = c.size() - 1;
    EvalResult out{};
    const double az = std::abs(z);
    if (az <= 1.0) {
        cplx p = 0.0, dp = 0.0;
        double s = 0.0;
        for (std::size_t k = c.size(); k-- > 0;) {
            dp = dp * z + p;
            p = p * z + c[k];
            s = s * az + std::abs(c[k]);
        }
        out.log_abs_p = std::log(std::abs(p));
        out.log_err = std::log(s * static_cast<double>(2 * n + 2) *
                               std::numeric_limits<double>::epsilon());
        out.derivative_ok = dp != 0.0;
        if (out.derivative_ok) out.newton = p / dp;
        return out;
    }
    // p(z) = z^n * s(w) with w = 1/z and s the reversed polynomial;
    // p/p' = s / (n w s - w^2 s').
    const cplx w = 1.0 / z;
    const double aw = std::abs(w);
    cplx sv = 0.0, dsv = 0.0;
    double mag = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {  // s(w) = sum_k c[n-k] w^k, Horner feeds c[0] first
        dsv = dsv * w + sv;
        sv = sv * w + c[k];
        mag = mag * aw + std::abs(c[k]);
    }
    out.log_abs_p = static_cast<double>(n) * std::log(az) + std::log(std::abs(sv));
    out.log_err = static_cast<double>(n) * std::log(az) +
                  std::log(mag * static_cast<double>(2 * n + 2) *
                           std::numeric_limits<double>::epsilon());
    const cplx denom = static_cast<double>(n) * w * sv - w * w * dsv;
    out.derivative_ok = denom != 0.0;
    if (out.derivative_ok) out.newton = sv / denom;
    return out;
}

// Initial guesses on circles whose radii come from the upper convex hull of
// (k, ln|c_k|).
std::vector<cplx> initial_guesses(const std::vector<cplx>& c) {
    struct Pt {
        int k;
        double u;
    };
    std::vector<Pt> pts;
    for (std::size_t k = 0; k < c.size(); ++k)
        if (c[k] != 0.0) pts.push_back({static_cast<int>(k), std::log(std::abs(c[k]))});

    std::vector<Pt> hull;
    for (const Pt& p : pts) {
        while (hull.size() >= 2) {
            const Pt& a = hull[hull.size() - 2];
            const Pt& b = hull[hull.size() - 1];
            // keep the chain concave from above
            if ((b.u - a.u) * (p.k - b.k) <= (p.u - b.u) * (b.k - a.k))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }

    std::vector<cplx> guesses;
    guesses.reserve(c.size() - 1);
    constexpr double golden = 0.61803398874989484;
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
        const int m = hull[s + 1].k - hull[s].k;
        const double r = std::exp((hull[s].u - hull[s + 1].u) / m);
        const double phase = 2.0 * std::numbers::pi * golden * hull[s + 1].k + 0.4;
        for (int j = 0; j < m; ++j) {
            const double th = 2.0 * std::numbers::pi * (j + 0.5) / m + phase;
            guesses.push_back(std::polar(r, th));
        }
    }
    return guesses;
}

std::vector<cplx> aberth(const std::vector<cplx>& c, double root_tol) {
    const std::size_t n = c.size() - 1;
    std::vector<cplx> z = initial_guesses(c);
    std::vector<bool> done(n, false);

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool all_done = true;
        double max_step = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            EvalResult ev = eval_with_newton(c, z[i]);
            if (ev.log_abs_p <= ev.log_err) {
                done[i] = true;
                continue;
            }
            all_done = false;
            if (!ev.derivative_ok) {
                z[i] += cplx(1e-8, 1e-8) * (1.0 + std::abs(z[i]));
                continue;
            }
            cplx repel = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                cplx d = z[i] - z[j];
                if (d == 0.0) d = cplx(1e-14, 1e-14) * (1.0 + std::abs(z[i]));
                repel += 1.0 / d;
            }
            const cplx denom = 1.0 - ev.newton * repel;
            cplx step = denom == 0.0 ? ev.newton : ev.newton / denom;
            if (std::isnan(step.real()) || std::isnan(step.imag())) step = ev.newton;
            z[i] -= step;
            max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[i])));
        }
        if (all_done) break;
        if (sweep > 20 && max_step < 1e-15) break;
    }

    // Acceptance bound, in log space so huge roots cannot overflow.
    double worst = -std::numeric_limits<double>::infinity();
    const double log_tol = std::log(root_tol);
    const double log_maxc = std::log(max_coeff_mag(c));
    for (std::size_t i = 0; i < n; ++i) {
        EvalResult ev = eval_with_newton(c, z[i]);
        double log_scale = log_maxc;
        const double az = std::abs(z[i]);
        if (az > 1.0) {
            for (std::size_t k = 0; k < c.size(); ++k)
                if (c[k] != 0.0)
                    log_scale = std::max(log_scale, std::log(std::abs(c[k])) +
                                                        static_cast<double>(k) * std::log(az));
        }
        worst = std::max(worst, ev.log_abs_p - (log_tol + log_scale));
    }
    if (worst > 0.0) throw NonConvergentRoots(std::exp(std::min(worst, 700.0)));
    return z;
}

}  // namespace

double residual_scale(const FloatPoly& p, cplx r) {
    double best = 0.0;
    const double ar = std::max(1.0, std::abs(r));
    double pw = 1.0;
    for (const cplx& c : p.coeffs) {
        best = std::max(best, std::abs(c) * pw);
        pw *= ar;
    }
    return best;
}

std::vector<cplx> roots_complex(const FloatPoly& p, double root_tol) {
    if (p.is_zero()) throw std::invalid_argument("cannot take roots of the zero polynomial");
    std::vector<cplx> c = strip_leading(p.coeffs);
    if (c.size() < 2)
        throw std::invalid_argument("polynomial has degree < 1 after stripping");

    // Exact zero roots split off directly.
    std::vector<cplx> roots;
    std::size_t nz = 0;
    while (nz + 1 < c.size() && c[nz] == 0.0) ++nz;
    roots.assign(nz, cplx(0.0, 0.0));
    if (nz > 0) c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(nz));
    if (c.size() < 2) return roots;

    if (c.size() == 2) {
        roots.push_back(-c[0] / c[1]);
        return roots;
    }

    std::vector<cplx> rest = aberth(c, root_tol);
    roots.insert(roots.end(), rest.begin(), rest.end());
    return roots;
}

}  // namespace insola
