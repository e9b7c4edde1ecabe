#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "insola/hyper.hpp"
#include "insola/io.hpp"
#include "insola/parse.hpp"
#include "insola/solver.hpp"
#include "insola/transport.hpp"

namespace py = pybind11;
using namespace insola;

namespace {

std::vector<std::string> coeff_strings(const UniPoly& f) {
    std::vector<std::string> out;
    out.reserve(f.coeffs().size());
    for (const CRat& c : f.coeffs()) out.push_back(c.str());
    return out;
}

py::dict classification_dict(const Classification& c) {
    py::dict d;
    d["kind"] = std::string(to_string(c.kind));
    d["domain"] = std::string(to_string(c.domain));
    d["P"] = to_string(c.P);
    d["G"] = to_string(c.G);
    if (c.kind == ResidualClass::HyperTaylor) {
        d["r"] = c.r.str();
        d["n"] = c.n;
    }
    return d;
}

RefName ref_or_throw(const std::string& name) {
    RefName out;
    if (!ref_from_string(name, &out)) throw Error("unknown reference name '" + name + "'");
    return out;
}

InsolaConfig make_config(const TriPoly& F, const std::string& oracle, const std::string& y0,
                         const std::string& x0, double alpha_star, int min_degree, int max_degree,
                         bool filter, int branch, bool positive_slope) {
    InsolaConfig cfg;
    cfg.F = F;
    cfg.alpha_star = alpha_star;
    cfg.degree_min = min_degree;
    cfg.degree_max = max_degree;
    cfg.filter = filter;
    if (!oracle.empty()) {
        cfg.recipe_source = OracleSource{ref_or_throw(oracle)};
    } else if (y0.empty()) {
        throw Error("a recipe source is required: pass oracle=... or y0=...");
    } else {
        FinderSource fs;
        fs.ic = InitialCondition{parse_crat(x0), parse_crat(y0)};
        fs.branch = branch;
        fs.positive_slope = positive_slope;
        cfg.recipe_source = fs;
    }
    return cfg;
}

py::list points_list(const InsolaResult& res) {
    py::list out;
    for (const RelationPoint& p : res.points) {
        py::dict d;
        d["grade"] = p.grade;
        d["t"] = p.t;
        d["value"] = p.value;
        d["survivor"] = p.filtered_survivor;
        d["residual"] = p.residual_mag;
        out.append(d);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_insola, m) {
    m.doc() = "Polynomial ODE initial value problems via infinitesimal roots of exact "
              "difference-quotient residuals";

    py::register_exception<Error>(m, "InsolaError");

    py::class_<TriPoly>(m, "OdePoly")
        .def("__str__", [](const TriPoly& p) { return to_string(p); })
        .def("__eq__", [](const TriPoly& a, const TriPoly& b) { return a == b; })
        .def("is_zero", &TriPoly::is_zero);

    py::class_<UniPoly>(m, "Poly")
        .def("__str__", [](const UniPoly& p) { return to_string(p); })
        .def("__eq__", [](const UniPoly& a, const UniPoly& b) { return a == b; })
        .def("degree", &UniPoly::degree)
        .def("coeffs", &coeff_strings, "exact coefficients as strings, index = degree")
        .def("eval", [](const UniPoly& p, const std::string& x) {
            return p.eval(parse_crat(x)).str();
        });

    py::class_<BiPoly>(m, "Residual")
        .def("__str__", [](const BiPoly& p) { return to_string(p); })
        .def("__eq__", [](const BiPoly& a, const BiPoly& b) { return a == b; })
        .def("is_zero", &BiPoly::is_zero);

    m.def("parse_ode", &parse_ode, py::arg("text"));
    m.def("parse_recipe", &parse_recipe, py::arg("text"));
    m.def("hyper_diff", &hyper_diff, py::arg("f"));
    m.def("apply_ode", &apply_ode, py::arg("ode"), py::arg("f"));
    m.def(
        "classify", [](const BiPoly& residual) { return classification_dict(classify(residual)); },
        py::arg("residual"));
    m.def(
        "taylor_reference",
        [](const std::string& name, int degree) { return taylor_reference(ref_or_throw(name), degree); },
        py::arg("name"), py::arg("degree"));

    m.def(
        "find_recipes",
        [](const TriPoly& F, int degree, const std::string& y0, const std::string& x0,
           int max_branches, bool positive_slope, bool numeric_steps) {
            FinderOptions opts;
            opts.max_branches = max_branches;
            opts.positive_slope = positive_slope;
            opts.numeric_steps = numeric_steps;
            auto recipes =
                find_recipes(F, degree, {parse_crat(x0), parse_crat(y0)}, opts);
            py::list out;
            for (const Recipe& r : recipes) {
                py::dict d;
                d["f"] = r.f;
                d["coeffs"] = coeff_strings(r.f);
                d["degree"] = r.degree;
                d["exact"] = r.exact;
                out.append(d);
            }
            return out;
        },
        py::arg("ode"), py::arg("degree"), py::arg("y0"), py::arg("x0") = "0",
        py::arg("max_branches") = 64, py::arg("positive_slope") = false,
        py::arg("numeric_steps") = false);

    m.def(
        "walk",
        [](const TriPoly& F, const std::string& y0, const std::vector<std::string>& steps,
           int degree) {
            std::vector<CRat> rs;
            for (const std::string& s : steps) rs.push_back(parse_crat(s));
            WalkTrace tr = walk(F, {CRat(0), parse_crat(y0)}, rs, degree);
            py::list out;
            for (const WalkEntry& e : tr.entries) {
                py::dict d;
                d["t"] = rat_to_double(e.t_cumulative.re);
                d["t_exact"] = e.t_cumulative.str();
                d["value"] = e.value.to_complex_double();
                d["value_exact"] = e.value.str();
                d["step"] = e.step.str();
                out.append(d);
            }
            return out;
        },
        py::arg("ode"), py::arg("y0"), py::arg("steps"), py::arg("degree") = 2);

    m.def(
        "first_idea_eval",
        [](const TriPoly& F, const std::string& y0, const std::string& t, int degree) {
            return first_idea_eval(F, {CRat(0), parse_crat(y0)}, parse_crat(t), degree).str();
        },
        py::arg("ode"), py::arg("y0"), py::arg("t"), py::arg("degree"));

    m.def(
        "run_insola",
        [](const TriPoly& F, const std::string& oracle, const std::string& y0,
           const std::string& x0, double alpha_star, int min_degree, int max_degree, bool filter,
           int branch, bool positive_slope) {
            InsolaResult res = run_insola(make_config(F, oracle, y0, x0, alpha_star, min_degree,
                                                      max_degree, filter, branch, positive_slope));
            py::dict out;
            out["points"] = points_list(res);
            py::list fails;
            for (const DegreeFailure& f : res.failures) {
                py::dict d;
                d["grade"] = f.grade;
                d["message"] = f.message;
                fails.append(d);
            }
            out["failures"] = fails;
            return out;
        },
        py::arg("ode"), py::arg("oracle") = "", py::arg("y0") = "", py::arg("x0") = "0",
        py::arg("alpha_star") = 1e-3, py::arg("min_degree") = 1, py::arg("max_degree") = 39,
        py::arg("filter") = false, py::arg("branch") = 0, py::arg("positive_slope") = false);

    m.def(
        "alpha_sweep",
        [](const TriPoly& F, const std::string& oracle, const std::vector<double>& alphas,
           int min_degree, int max_degree, bool filter) {
            InsolaConfig cfg = make_config(F, oracle, "", "0", 1e-3, min_degree, max_degree,
                                           filter, 0, false);
            auto entries = alpha_sweep(cfg, alphas);
            py::list out;
            for (const SweepEntry& e : entries) {
                py::dict d;
                d["alpha_star"] = e.alpha_star;
                d["max_survivor_modulus"] = e.max_survivor_modulus;
                d["points"] = points_list(e.result);
                out.append(d);
            }
            return out;
        },
        py::arg("ode"), py::arg("oracle"), py::arg("alphas"), py::arg("min_degree") = 1,
        py::arg("max_degree") = 39, py::arg("filter") = false);

    m.def(
        "roots_complex",
        [](const std::vector<std::complex<double>>& coeffs, double root_tol) {
            FloatPoly p;
            p.coeffs = coeffs;
            return roots_complex(p, root_tol);
        },
        py::arg("coeffs"), py::arg("root_tol") = 1e-10);

    m.def("filter_noninfinitesimal", &filter_noninfinitesimal, py::arg("roots_fstar"),
          py::arg("roots_p"), py::arg("dedupe_tol") = 1e-8);

    m.def(
        "reference_value",
        [](const std::string& name, std::complex<double> t) {
            return reference_value(ref_or_throw(name), t);
        },
        py::arg("name"), py::arg("t"));

    m.attr("__version__") = "0.1.0";
}
