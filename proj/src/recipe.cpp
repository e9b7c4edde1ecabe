#include "insola/recipe.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>

#include "insola/roots.hpp"

namespace insola {

// ---------------------------------------------------------------------------
// CoefExpr
// ---------------------------------------------------------------------------

std::vector<int> CoefExpr::trimmed(std::vector<int> key) {
    while (!key.empty() && key.back() == 0) key.pop_back();
    return key;
}

void CoefExpr::add(const std::vector<int>& key, const CRat& c) {
    if (c.is_zero()) return;
    std::vector<int> k = trimmed(key);
    auto [it, inserted] = terms_.try_emplace(std::move(k), c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

CoefExpr CoefExpr::operator-() const {
    CoefExpr out;
    for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
    return out;
}

CoefExpr& CoefExpr::operator+=(const CoefExpr& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
}

CoefExpr operator*(const CoefExpr& a, const CoefExpr& b) {
    CoefExpr out;
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            std::vector<int> k(std::max(ka.size(), kb.size()), 0);
            for (std::size_t i = 0; i < ka.size(); ++i) k[i] += ka[i];
            for (std::size_t i = 0; i < kb.size(); ++i) k[i] += kb[i];
            out.add(k, ca * cb);
        }
    }
    return out;
}

std::vector<int> CoefExpr::unknowns() const {
    std::vector<int> out;
    for (const auto& [k, c] : terms_)
        for (std::size_t i = 0; i < k.size(); ++i)
            if (k[i] > 0 && std::find(out.begin(), out.end(), static_cast<int>(i)) == out.end())
                out.push_back(static_cast<int>(i));
    std::sort(out.begin(), out.end());
    return out;
}

int CoefExpr::degree_in(int id) const {
    int d = 0;
    for (const auto& [k, c] : terms_)
        if (static_cast<std::size_t>(id) < k.size()) d = std::max(d, k[static_cast<std::size_t>(id)]);
    return d;
}

CoefExpr CoefExpr::substitute(int id, const CoefExpr& value) const {
    int maxe = degree_in(id);
    if (maxe == 0) return *this;
    std::vector<CoefExpr> pow(static_cast<std::size_t>(maxe) + 1);
    pow[0] = CoefExpr(1);
    for (int e = 1; e <= maxe; ++e) pow[static_cast<std::size_t>(e)] = pow[static_cast<std::size_t>(e - 1)] * value;

    CoefExpr out;
    for (const auto& [k, c] : terms_) {
        int e = static_cast<std::size_t>(id) < k.size() ? k[static_cast<std::size_t>(id)] : 0;
        std::vector<int> stripped = k;
        if (e > 0) stripped[static_cast<std::size_t>(id)] = 0;
        CoefExpr base;
        base.add(stripped, c);
        if (e == 0)
            out += base;
        else
            out += base * pow[static_cast<std::size_t>(e)];
    }
    return out;
}

std::vector<CRat> CoefExpr::univariate_in(int id) const {
    std::vector<CRat> coeffs(static_cast<std::size_t>(degree_in(id)) + 1);
    for (const auto& [k, c] : terms_) {
        int e = 0;
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (k[i] == 0) continue;
            if (static_cast<int>(i) != id) throw std::logic_error("expression is not univariate");
            e = k[i];
        }
        coeffs[static_cast<std::size_t>(e)] += c;
    }
    return coeffs;
}

bool CoefExpr::split_linear(int id, CoefExpr* a_out, CoefExpr* b_out) const {
    CoefExpr a, b;
    for (const auto& [k, c] : terms_) {
        int e = static_cast<std::size_t>(id) < k.size() ? k[static_cast<std::size_t>(id)] : 0;
        if (e >= 2) return false;
        std::vector<int> stripped = k;
        if (e == 1) stripped[static_cast<std::size_t>(id)] = 0;
        (e == 1 ? a : b).add(stripped, c);
    }
    *a_out = std::move(a);
    *b_out = std::move(b);
    return true;
}

std::string CoefExpr::str() const {
    if (terms_.empty()) return "0";
    // Highest keys first reads most-significant-unknown first.
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [k, c] = *it;
        std::string vars;
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (k[i] == 0) continue;
            if (!vars.empty()) vars += "*";
            vars += "c" + std::to_string(i);
            if (k[i] > 1) vars += "^" + std::to_string(k[i]);
        }
        bool negative = c.is_real() && sgn(c.re) < 0;
        CRat mag = negative ? -c : c;
        std::string body = mag.str();
        if (!vars.empty()) body = (body == "1") ? vars : body + "*" + vars;
        if (first)
            out += negative ? "-" + body : body;
        else
            out += negative ? " - " + body : " + " + body;
        first = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Symbolic residual of the template polynomial
// ---------------------------------------------------------------------------

namespace {

using SymPoly = DensePoly<CoefExpr>;

SymPoly st_residual_sym(const TriPoly& F, const SymPoly& f) {
    const SymPoly fprime = f.derivative();
    std::vector<SymPoly> zp{SymPoly::constant(CoefExpr(1))};
    for (int i = 1; i <= std::max(F.deg_z(), 0); ++i) zp.push_back(zp.back() * fprime);
    std::vector<SymPoly> yp{SymPoly::constant(CoefExpr(1))};
    for (int i = 1; i <= std::max(F.deg_y(), 0); ++i) yp.push_back(yp.back() * f);

    SymPoly out;
    for (const auto& [k, c] : F.terms())
        out += SymPoly::monomial(CoefExpr::constant(c), k.dx) * zp[static_cast<std::size_t>(k.dz)] *
               yp[static_cast<std::size_t>(k.dy)];
    return out;
}

}  // namespace

std::vector<CoefExpr> symbolic_st_coeffs(const TriPoly& F, int degree) {
    std::vector<CoefExpr> cs;
    cs.reserve(static_cast<std::size_t>(degree) + 1);
    for (int k = 0; k <= degree; ++k) cs.push_back(CoefExpr::unknown(k));
    SymPoly residual = st_residual_sym(F, SymPoly(std::move(cs)));
    return residual.coeffs();
}

// ---------------------------------------------------------------------------
// Exact univariate solving for step equations
// ---------------------------------------------------------------------------

namespace {

struct SolveOutcome {
    std::vector<CRat> roots;  // distinct, sorted by the CRat total order
    bool exact = true;
};

SolveOutcome numeric_step_roots(const std::vector<CRat>& cs) {
    FloatPoly p;
    for (const CRat& c : cs) p.coeffs.push_back(c.to_complex_double());
    std::vector<std::complex<double>> rs = roots_complex(p, 1e-12);
    std::sort(rs.begin(), rs.end(), [](auto a, auto b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    SolveOutcome out;
    out.exact = false;
    for (const auto& r : rs) {
        bool dup = false;
        for (const auto& seen : out.roots)
            if (std::abs(seen.to_complex_double() - r) <= 1e-9) dup = true;
        if (!dup) out.roots.emplace_back(Rat(mpq_class(r.real())), Rat(mpq_class(r.imag())));
    }
    return out;
}

// Divisors of |n| assembled from a bounded trial-division factorization.
// May miss divisors of huge semiprime cofactors; callers treat a miss as
// "no rational root found".
std::vector<mpz_class> bounded_divisors(mpz_class n, std::size_t cap) {
    n = abs(n);
    std::vector<std::pair<mpz_class, unsigned>> factors;
    for (mpz_class p = 2; p * p <= n && p < 65536; p += (p == 2 ? 1 : 2)) {
        unsigned e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            ++e;
        }
        if (e > 0) factors.emplace_back(p, e);
    }
    if (n > 1) factors.emplace_back(n, 1);

    std::vector<mpz_class> divs{1};
    for (const auto& [p, e] : factors) {
        std::size_t base = divs.size();
        mpz_class pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) {
                divs.push_back(divs[j] * pk);
                if (divs.size() > cap) return divs;
            }
        }
    }
    return divs;
}

CRat eval_univariate(const std::vector<CRat>& cs, const CRat& v) {
    CRat acc;
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * v + *it;
    return acc;
}

// Deflate cs by the exact root r: cs / (u - r).
std::vector<CRat> deflate(const std::vector<CRat>& cs, const CRat& r) {
    std::vector<CRat> q(cs.size() - 1);
    CRat carry = cs.back();
    for (std::size_t k = cs.size() - 1; k-- > 0;) {
        q[k] = carry;
        carry = cs[k] + carry * r;
    }
    return q;
}

// One rational root of a real-rational polynomial of degree >= 1, or false.
bool rational_root(const std::vector<CRat>& cs, CRat* out) {
    for (const CRat& c : cs)
        if (!c.is_real()) return false;
    if (cs[0].is_zero()) {
        *out = CRat(0);
        return true;
    }
    mpz_class den_lcm = 1;
    for (const CRat& c : cs) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.re.get_den().get_mpz_t());
    std::vector<mpz_class> A;
    for (const CRat& c : cs) A.push_back(mpz_class(c.re * den_lcm));

    const std::size_t cap = 512;
    std::vector<mpz_class> ps = bounded_divisors(A.front(), cap);
    std::vector<mpz_class> qs = bounded_divisors(A.back(), cap);
    for (const mpz_class& p : ps) {
        for (const mpz_class& q : qs) {
            Rat cand(p, q);
            cand.canonicalize();
            for (int s = 0; s < 2; ++s) {
                CRat v(s == 0 ? cand : Rat(-cand));
                if (eval_univariate(cs, v).is_zero()) {
                    *out = v;
                    return true;
                }
            }
        }
    }
    return false;
}

// Distinct exact roots of the step equation, or IrrationalStep / numeric fallback.
SolveOutcome solve_step_equation(std::vector<CRat> cs, bool numeric_ok, int label,
                                 const std::string& eq_str) {
    while (!cs.empty() && cs.back().is_zero()) cs.pop_back();
    const int deg = static_cast<int>(cs.size()) - 1;
    if (deg < 1) throw std::logic_error("step equation must be nonconstant");

    if (deg == 1) return {{-cs[0] / cs[1]}, true};

    if (deg == 2) {
        const CRat &a = cs[2], &b = cs[1], &c = cs[0];
        CRat disc = b * b - CRat(4) * a * c;
        CRat w;
        if (crat_sqrt_exact(disc, &w)) {
            CRat two_a = CRat(2) * a;
            std::vector<CRat> roots{(-b + w) / two_a};
            CRat other = (-b - w) / two_a;
            if (other != roots[0]) roots.push_back(other);
            std::sort(roots.begin(), roots.end());
            return {roots, true};
        }
        if (numeric_ok) return numeric_step_roots(cs);
        throw IrrationalStep(label, eq_str);
    }

    // deg >= 3: peel off exact rational roots; whatever remains of degree <= 2
    // is solved in closed form.
    std::vector<CRat> found;
    std::vector<CRat> work = cs;
    while (static_cast<int>(work.size()) - 1 >= 1) {
        const int d = static_cast<int>(work.size()) - 1;
        if (d <= 2) {
            try {
                SolveOutcome tail = solve_step_equation(work, false, label, eq_str);
                found.insert(found.end(), tail.roots.begin(), tail.roots.end());
            } catch (const IrrationalStep&) {
            }
            break;
        }
        CRat r;
        if (!rational_root(work, &r)) break;
        found.push_back(r);
        work = deflate(work, r);
    }
    if (found.empty()) {
        if (numeric_ok) return numeric_step_roots(cs);
        throw IrrationalStep(label, eq_str);
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return {found, true};
}

// ---------------------------------------------------------------------------
// Branch search
// ---------------------------------------------------------------------------

struct SearchState {
    std::vector<std::pair<int, CoefExpr>> eqs;  // (step label, reduced equation)
    std::map<int, CoefExpr> assign;             // unknown id -> value over live unknowns
    std::vector<BranchStep> path;
    bool exact = true;
};

void apply_assignment(SearchState& st, std::size_t next_eq, int id, const CoefExpr& value) {
    for (auto& [k, v] : st.assign) v = v.substitute(id, value);
    for (std::size_t j = next_eq; j < st.eqs.size(); ++j)
        st.eqs[j].second = st.eqs[j].second.substitute(id, value);
    st.assign.emplace(id, value);
}

class Finder {
public:
    Finder(int degree, const InitialCondition& ic, const FinderOptions& opts)
        : degree_(degree), ic_(ic), opts_(opts) {}

    void run(SearchState st, std::size_t idx) {
        for (std::size_t i = idx; i < st.eqs.size(); ++i) {
            const int label = st.eqs[i].first;
            const CoefExpr e = st.eqs[i].second;
            if (e.is_zero()) continue;  // no information; unknowns stay deferred
            if (e.is_constant()) {
                record_error(std::make_exception_ptr(InconsistentStep(label, e.str())));
                return;
            }
            const std::vector<int> us = e.unknowns();
            if (us.size() == 1) {
                const int u = us[0];
                SolveOutcome so;
                try {
                    so = solve_step_equation(e.univariate_in(u), opts_.numeric_steps, label, e.str());
                } catch (const Error&) {
                    record_error(std::current_exception());
                    return;
                }
                for (const CRat& root : so.roots) {
                    SearchState child = st;
                    child.exact = st.exact && so.exact;
                    child.path.push_back({label, u, root, so.roots, false});
                    apply_assignment(child, i + 1, u, CoefExpr::constant(root));
                    run(std::move(child), i + 1);
                }
                return;
            }
            // Several unknowns: eliminate the newest one if the equation is
            // linear in it with a constant coefficient.
            const int newest = us.back();
            CoefExpr a, b;
            if (e.split_linear(newest, &a, &b) && a.is_constant() && !a.constant_value().is_zero()) {
                CoefExpr value = CoefExpr::constant(CRat(-1) / a.constant_value()) * b;
                apply_assignment(st, i + 1, newest, value);
                continue;
            }
            record_error(std::make_exception_ptr(UnderdeterminedStep(label, us, e.str())));
            return;
        }
        finish(std::move(st));
    }

    std::vector<Recipe> take_results() { return std::move(results_); }
    std::exception_ptr first_error() const { return first_error_; }

private:
    void finish(SearchState st) {
        if (++leaves_ > opts_.max_branches) throw BranchOverflow(opts_.max_branches);
        for (int k = 0; k <= degree_; ++k) {
            if (st.assign.count(k)) continue;
            bool occurs = false;
            for (const auto& [id, v] : st.assign)
                if (v.degree_in(k) > 0) occurs = true;
            st.path.push_back({-1, k, CRat(0), {}, true});
            if (occurs)
                for (auto& [id, v] : st.assign) v = v.substitute(k, CoefExpr());
        }
        std::vector<CRat> cs(static_cast<std::size_t>(degree_) + 1);
        for (int k = 0; k <= degree_; ++k) {
            auto it = st.assign.find(k);
            if (it == st.assign.end()) continue;
            if (!it->second.is_constant()) throw std::logic_error("unresolved recipe coefficient");
            cs[static_cast<std::size_t>(k)] = it->second.constant_value();
        }
        Recipe r;
        r.f = UniPoly(std::move(cs));
        r.degree = degree_;
        r.branch_path = std::move(st.path);
        r.initial = ic_;
        r.exact = st.exact;
        results_.push_back(std::move(r));
    }

    void record_error(std::exception_ptr e) {
        if (!first_error_) first_error_ = e;
    }

    int degree_;
    InitialCondition ic_;
    FinderOptions opts_;
    int leaves_ = 0;
    std::vector<Recipe> results_;
    std::exception_ptr first_error_;
};

}  // namespace

std::vector<Recipe> find_recipes(const TriPoly& F, int degree, const InitialCondition& ic,
                                 const FinderOptions& opts) {
    if (degree < 1) throw std::invalid_argument("recipe degree must be >= 1");
    if (F.is_zero()) throw std::invalid_argument("differential equation must be nonzero");

    std::vector<CoefExpr> sym = symbolic_st_coeffs(F, degree);

    SearchState st;
    CoefExpr ic_row = CoefExpr::constant(-ic.y0);
    CRat power(1);
    for (int k = 0; k <= degree; ++k) {
        ic_row += CoefExpr::constant(power) * CoefExpr::unknown(k);
        power *= ic.x0;
    }
    st.eqs.emplace_back(-1, std::move(ic_row));
    for (int k = 0; k < degree; ++k)
        st.eqs.emplace_back(k, k < static_cast<int>(sym.size()) ? sym[static_cast<std::size_t>(k)]
                                                                : CoefExpr());

    Finder finder(degree, ic, opts);
    finder.run(std::move(st), 0);
    std::vector<Recipe> results = finder.take_results();

    if (opts.positive_slope) {
        std::erase_if(results, [](const Recipe& r) {
            CRat c1 = r.f.coeff(1);
            return !(c1.is_real() && sgn(c1.re) > 0);
        });
    }
    if (results.empty() && finder.first_error()) std::rethrow_exception(finder.first_error());
    return results;
}

// ---------------------------------------------------------------------------
// Reference expansions
// ---------------------------------------------------------------------------

const char* to_string(RefName n) {
    switch (n) {
        case RefName::Exp: return "exp";
        case RefName::Ln1p: return "ln1p";
        case RefName::Sin: return "sin";
        case RefName::InvSquare: return "inv_square";
        case RefName::ExpNest: return "exp_nest";
        case RefName::CubeSquare: return "cube_square";
    }
    return "?";
}

bool ref_from_string(const std::string& s, RefName* out) {
    for (RefName n : {RefName::Exp, RefName::Ln1p, RefName::Sin, RefName::InvSquare,
                      RefName::ExpNest, RefName::CubeSquare}) {
        if (s == to_string(n)) {
            *out = n;
            return true;
        }
    }
    return false;
}

UniPoly taylor_reference(RefName name, int degree) {
    if (degree < 0) throw std::invalid_argument("degree must be >= 0");
    std::vector<CRat> cs(static_cast<std::size_t>(degree) + 1);
    switch (name) {
        case RefName::Exp:
            for (int k = 0; k <= degree; ++k) cs[static_cast<std::size_t>(k)] = CRat(Rat(1) / rat_factorial(static_cast<unsigned>(k)));
            break;
        case RefName::Ln1p:
            for (int k = 1; k <= degree; ++k) {
                Rat c(k % 2 == 1 ? 1 : -1, k);
                cs[static_cast<std::size_t>(k)] = CRat(c);
            }
            break;
        case RefName::Sin:
            for (int k = 1; k <= degree; k += 2) {
                Rat c = Rat(((k - 1) / 2) % 2 == 0 ? 1 : -1) / rat_factorial(static_cast<unsigned>(k));
                cs[static_cast<std::size_t>(k)] = CRat(c);
            }
            break;
        case RefName::InvSquare:
            for (int k = 0; k <= degree; ++k)
                cs[static_cast<std::size_t>(k)] = CRat(Rat(k % 2 == 0 ? (k + 1) : -(k + 1)));
            break;
        case RefName::CubeSquare:
            if (degree >= 2) cs[2] = CRat(1);
            if (degree >= 3) cs[3] = CRat(1);
            break;
        case RefName::ExpNest: {
            // Constant term: alternating factorial series for e^-1, truncated
            // where the tail (< 1e-37) is far below double resolution.
            Rat c0;
            for (unsigned j = 0; j <= 33; ++j) {
                Rat t = Rat(1) / rat_factorial(j);
                c0 += (j % 2 == 0) ? t : Rat(-t);
            }
            cs[0] = CRat(c0);
            // (x+1)^3 f' = 2 f, coefficient of x^k:
            // (k+1)c_{k+1} + 3k c_k + 3(k-1)c_{k-1} + (k-2)c_{k-2} = 2 c_k
            for (int k = 0; k < degree; ++k) {
                CRat acc = CRat(2 - 3 * k) * cs[static_cast<std::size_t>(k)];
                if (k >= 1) acc -= CRat(3 * (k - 1)) * cs[static_cast<std::size_t>(k - 1)];
                if (k >= 2) acc -= CRat(k - 2) * cs[static_cast<std::size_t>(k - 2)];
                cs[static_cast<std::size_t>(k + 1)] = acc / CRat(k + 1);
            }
            break;
        }
    }
    return UniPoly(std::move(cs));
}

std::complex<double> reference_value(RefName name, std::complex<double> t) {
    switch (name) {
        case RefName::Exp: return std::exp(t);
        case RefName::Ln1p: return std::log(1.0 + t);
        case RefName::Sin: return std::sin(t);
        case RefName::InvSquare: return 1.0 / ((t + 1.0) * (t + 1.0));
        case RefName::ExpNest: return std::exp(-1.0 / ((t + 1.0) * (t + 1.0)));
        case RefName::CubeSquare: return t * t * (t + 1.0);
    }
    return {};
}

}  // namespace insola
