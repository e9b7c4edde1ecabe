#include "insola/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <thread>

#include "insola/hyper.hpp"

namespace insola {

namespace {

using cplx = std::complex<double>;

bool complex_less(const cplx& a, const cplx& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
}

std::vector<cplx> dedupe_sorted(std::vector<cplx> v, double tol) {
    std::sort(v.begin(), v.end(), complex_less);
    std::vector<cplx> reps;
    for (const cplx& z : v) {
        bool dup = false;
        for (const cplx& r : reps)
            if (std::abs(z - r) <= tol) {
                dup = true;
                break;
            }
        if (!dup) reps.push_back(z);
    }
    return reps;
}

struct FilterDetail {
    std::vector<cplx> deduped;
    std::vector<bool> survived;
};

FilterDetail filter_detail(std::vector<cplx> roots_fstar, const std::vector<cplx>& roots_p,
                           double dedupe_tol) {
    FilterDetail d;
    d.deduped = dedupe_sorted(std::move(roots_fstar), dedupe_tol);
    d.survived.assign(d.deduped.size(), true);

    std::vector<cplx> p_reps = dedupe_sorted(roots_p, dedupe_tol);
    for (const cplx& pz : p_reps) {
        if (std::abs(pz) <= dedupe_tol) continue;  // the zero root never eliminates
        int best = -1;
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < d.deduped.size(); ++i) {
            if (!d.survived[i]) continue;
            double dist = std::abs(d.deduped[i] - pz);
            if (dist < best_dist) {
                best_dist = dist;
                best = static_cast<int>(i);
            }
        }
        if (best >= 0) d.survived[static_cast<std::size_t>(best)] = false;
    }
    return d;
}

// ln |p(z)|, overflow-safe for |z| > 1 via the reversed polynomial.
double log_abs_eval(const FloatPoly& p, cplx z) {
    const double az = std::abs(z);
    if (az <= 1.0) return std::log(std::abs(p.eval(z)));
    const std::size_t n = p.coeffs.size() - 1;
    cplx s = 0.0;
    cplx w = 1.0 / z;
    for (std::size_t k = 0; k < p.coeffs.size(); ++k) s = s * w + p.coeffs[k];
    return static_cast<double>(n) * std::log(az) + std::log(std::abs(s));
}

double abs_eval_safe(const FloatPoly& p, cplx z) {
    double lg = log_abs_eval(p, z);
    return std::exp(std::min(lg, 700.0));
}

struct PerDegree {
    std::vector<RelationPoint> points;
    std::optional<DegreeFailure> failure;
};

int stripped_degree(const FloatPoly& p) {
    double maxc = 0.0;
    for (const cplx& c : p.coeffs) maxc = std::max(maxc, std::abs(c));
    std::size_t n = p.coeffs.size();
    while (n > 1 && std::abs(p.coeffs[n - 1]) <= 1e-14 * maxc) --n;
    return static_cast<int>(n) - 1;
}

PerDegree run_degree(const InsolaConfig& cfg, int grade) {
    PerDegree out;
    try {
        UniPoly f;
        if (const auto* oracle = std::get_if<OracleSource>(&cfg.recipe_source)) {
            f = taylor_reference(oracle->name, grade);
        } else {
            const auto& fs = std::get<FinderSource>(cfg.recipe_source);
            FinderOptions opts;
            opts.max_branches = fs.max_branches;
            opts.positive_slope = fs.positive_slope;
            opts.numeric_steps = fs.numeric_steps;
            std::vector<Recipe> recipes = find_recipes(cfg.F, grade, fs.ic, opts);
            if (recipes.empty()) throw EmptyFeasibleSet("grade " + std::to_string(grade));
            if (fs.branch < 0 || fs.branch >= static_cast<int>(recipes.size()))
                throw Error("branch index " + std::to_string(fs.branch) + " out of range (" +
                            std::to_string(recipes.size()) + " branches)");
            f = recipes[static_cast<std::size_t>(fs.branch)].f;
        }

        BiPoly residual = apply_ode(cfg.F, f);
        if (residual.is_zero()) return out;  // no roots to report
        FloatPoly fstar = substitute_alpha(residual, cfg.alpha_star);
        if (fstar.is_zero() || stripped_degree(fstar) < 1) return out;

        std::vector<cplx> roots = roots_complex(fstar, cfg.root_tol);
        std::sort(roots.begin(), roots.end(), complex_less);

        std::vector<cplx> emit;
        std::vector<bool> survived;
        if (cfg.filter) {
            std::vector<cplx> p_roots;
            UniPoly P = at_alpha_zero(residual);
            if (!P.is_zero()) {
                FloatPoly pf = to_float(P);
                // Truncate P at F*'s numerically significant degree so the two
                // root clouds stay structurally aligned for nearest-matching;
                // coefficients beyond that horizon are noise in F* as well.
                const std::size_t keep = static_cast<std::size_t>(stripped_degree(fstar)) + 1;
                if (pf.coeffs.size() > keep) {
                    pf.coeffs.resize(keep);
                    while (!pf.coeffs.empty() && pf.coeffs.back() == cplx(0.0, 0.0))
                        pf.coeffs.pop_back();
                }
                if (!pf.is_zero() && stripped_degree(pf) >= 1)
                    p_roots = roots_complex(pf, cfg.root_tol);
            }
            FilterDetail d = filter_detail(roots, p_roots, cfg.dedupe_tol);
            emit = std::move(d.deduped);
            survived = std::move(d.survived);
        } else {
            emit = std::move(roots);
            survived.assign(emit.size(), true);
        }

        FloatPoly ff = to_float(f);
        for (std::size_t i = 0; i < emit.size(); ++i) {
            RelationPoint pt;
            pt.t = emit[i];
            pt.value = ff.eval(emit[i]);
            pt.grade = grade;
            pt.filtered_survivor = survived[i];
            pt.residual_mag = abs_eval_safe(fstar, emit[i]);
            out.points.push_back(pt);
        }
    } catch (const std::exception& e) {
        out.points.clear();
        out.failure = DegreeFailure{grade, e.what()};
    }
    return out;
}

}  // namespace

std::vector<cplx> filter_noninfinitesimal(std::vector<cplx> roots_fstar,
                                          const std::vector<cplx>& roots_p, double dedupe_tol) {
    FilterDetail d = filter_detail(std::move(roots_fstar), roots_p, dedupe_tol);
    std::vector<cplx> out;
    for (std::size_t i = 0; i < d.deduped.size(); ++i)
        if (d.survived[i]) out.push_back(d.deduped[i]);
    return out;
}

int thread_cap() {
    if (const char* env = std::getenv("INSOLA_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

InsolaResult run_insola(const InsolaConfig& cfg) {
    if (!(cfg.alpha_star > 0.0)) throw std::invalid_argument("alpha_star must be positive");
    if (cfg.degree_min < 1) throw std::invalid_argument("degree_min must be >= 1");
    if (cfg.degree_max < cfg.degree_min)
        throw std::invalid_argument("degree_max must be >= degree_min");
    if (!(cfg.dedupe_tol > 0.0) || !(cfg.root_tol > 0.0))
        throw std::invalid_argument("tolerances must be positive");

    const int count = cfg.degree_max - cfg.degree_min + 1;
    std::vector<PerDegree> slots(static_cast<std::size_t>(count));

    const int workers = std::min(thread_cap(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i)
            slots[static_cast<std::size_t>(i)] = run_degree(cfg, cfg.degree_min + i);
    } else {
        std::atomic<int> next{0};
        auto worker = [&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= count) return;
                slots[static_cast<std::size_t>(i)] = run_degree(cfg, cfg.degree_min + i);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    InsolaResult out;
    for (const PerDegree& s : slots) {
        out.points.insert(out.points.end(), s.points.begin(), s.points.end());
        if (s.failure) out.failures.push_back(*s.failure);
    }
    return out;
}

std::vector<SweepEntry> alpha_sweep(const InsolaConfig& cfg, const std::vector<double>& alphas) {
    std::vector<SweepEntry> out;
    out.reserve(alphas.size());
    for (double a : alphas) {
        InsolaConfig c = cfg;
        c.alpha_star = a;
        SweepEntry e;
        e.alpha_star = a;
        e.result = run_insola(c);
        for (const RelationPoint& p : e.result.points)
            if (p.filtered_survivor)
                e.max_survivor_modulus = std::max(e.max_survivor_modulus, std::abs(p.t));
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace insola
