#include <CLI11.hpp>

#include <complex>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "insola/io.hpp"
#include "insola/parse.hpp"
#include "insola/solver.hpp"
#include "insola/transport.hpp"

namespace {

using namespace insola;

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<CRat> parse_rat_list(const std::string& s) {
    std::vector<CRat> out;
    for (const std::string& item : split_list(s))
        if (!item.empty()) out.push_back(parse_crat(item));
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    for (const std::string& item : split_list(s))
        if (!item.empty()) out.push_back(std::stod(item));
    return out;
}

struct CommonSolveFlags {
    std::string ode;
    std::string oracle;
    std::string y0;
    std::string x0 = "0";
    double alpha_star = 1e-3;
    int min_degree = 1;
    int max_degree = 39;
    bool filter = false;
    int branch = 0;
    bool positive_slope = false;
    bool numeric_steps = false;
    double dedupe_tol = 1e-8;
    double root_tol = 1e-10;
    std::string out, json, svg;
};

void add_solve_flags(CLI::App* cmd, CommonSolveFlags* f) {
    cmd->add_option("--ode", f->ode, "differential equation in z, y, x")->required();
    cmd->add_option("--oracle", f->oracle,
                    "built-in expansion: exp, ln1p, sin, inv_square, exp_nest, cube_square");
    cmd->add_option("--y0", f->y0, "initial value (rational or complex) for the recipe search");
    cmd->add_option("--x0", f->x0, "initial-condition abscissa (default 0)");
    cmd->add_option("--alpha-star", f->alpha_star, "real value substituted for the infinitesimal");
    cmd->add_option("--min-degree", f->min_degree, "lowest recipe degree");
    cmd->add_option("--max-degree", f->max_degree, "highest recipe degree");
    cmd->add_flag("--filter", f->filter, "remove roots matched to the a-free part");
    cmd->add_option("--branch", f->branch, "recipe branch index (finder mode)");
    cmd->add_flag("--positive-slope", f->positive_slope,
                  "keep only branches with positive real x-coefficient");
    cmd->add_flag("--numeric-steps", f->numeric_steps,
                  "solve irrational step equations in floating point");
    cmd->add_option("--dedupe-tol", f->dedupe_tol, "root deduplication tolerance");
    cmd->add_option("--root-tol", f->root_tol, "relative root residual tolerance");
    cmd->add_option("--out", f->out, "points CSV path");
    cmd->add_option("--json", f->json, "JSON output path");
    cmd->add_option("--svg", f->svg, "scatter SVG path");
}

InsolaConfig build_config(const CommonSolveFlags& f, std::optional<RefName>* reference) {
    InsolaConfig cfg;
    cfg.F = parse_ode(f.ode);
    cfg.alpha_star = f.alpha_star;
    cfg.degree_min = f.min_degree;
    cfg.degree_max = f.max_degree;
    cfg.filter = f.filter;
    cfg.dedupe_tol = f.dedupe_tol;
    cfg.root_tol = f.root_tol;

    if (!f.oracle.empty() && !f.y0.empty())
        throw Error("--oracle and --y0 are mutually exclusive recipe sources");
    if (!f.oracle.empty()) {
        RefName name;
        if (!ref_from_string(f.oracle, &name)) throw Error("unknown oracle '" + f.oracle + "'");
        cfg.recipe_source = OracleSource{name};
        *reference = name;
    } else if (!f.y0.empty()) {
        FinderSource fs;
        fs.ic = InitialCondition{parse_crat(f.x0), parse_crat(f.y0)};
        fs.branch = f.branch;
        fs.positive_slope = f.positive_slope;
        fs.numeric_steps = f.numeric_steps;
        cfg.recipe_source = fs;
        *reference = std::nullopt;
    } else {
        throw Error("a recipe source is required: --oracle <name> or --y0 <value>");
    }
    return cfg;
}

int cmd_solve(const CommonSolveFlags& f) {
    std::optional<RefName> reference;
    InsolaConfig cfg = build_config(f, &reference);
    InsolaResult result = run_insola(cfg);

    if (!f.out.empty()) write_points_csv(f.out, result.points);
    if (!f.json.empty()) write_text_file(f.json, points_json(result));
    if (!f.svg.empty()) write_scatter_svg(f.svg, result.points, reference);

    std::size_t survivors = 0;
    for (const RelationPoint& p : result.points) survivors += p.filtered_survivor ? 1 : 0;
    std::cout << "points: " << result.points.size() << " (survivors: " << survivors
              << "), failed degrees: " << result.failures.size() << "\n";
    for (const DegreeFailure& d : result.failures)
        std::cerr << "degree " << d.grade << ": " << d.message << "\n";
    return result.failures.empty() ? 0 : 2;
}

int cmd_sweep(const CommonSolveFlags& f, const std::string& alphas_text) {
    std::optional<RefName> reference;
    InsolaConfig cfg = build_config(f, &reference);
    std::vector<double> alphas = parse_double_list(alphas_text);
    std::vector<SweepEntry> entries = alpha_sweep(cfg, alphas);

    if (!f.json.empty()) write_text_file(f.json, sweep_json(entries));
    if (!f.svg.empty()) write_sweep_svg(f.svg, entries);
    if (!f.out.empty()) {
        std::string csv = "alpha_star," + points_csv({}).substr(0, points_csv({}).size() - 1);
        csv += "\n";
        for (const SweepEntry& e : entries) {
            std::string body = points_csv(e.result.points);
            std::size_t nl = body.find('\n');
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", e.alpha_star);
            for (std::size_t pos = nl + 1; pos < body.size();) {
                std::size_t end = body.find('\n', pos);
                csv += std::string(buf) + "," + body.substr(pos, end - pos) + "\n";
                pos = end + 1;
            }
        }
        write_text_file(f.out, csv);
    }

    bool failed = false;
    for (const SweepEntry& e : entries) {
        std::printf("alpha* = %g: %zu points, max survivor |t*| = %.6g\n", e.alpha_star,
                    e.result.points.size(), e.max_survivor_modulus);
        failed = failed || !e.result.failures.empty();
    }
    return failed ? 2 : 0;
}

int cmd_walk(const std::string& ode, const std::string& y0, const std::string& x0,
             const std::string& steps_text, int degree, bool numeric_steps,
             const std::string& out) {
    TriPoly F = parse_ode(ode);
    InitialCondition ic{parse_crat(x0), parse_crat(y0)};
    std::vector<CRat> steps = parse_rat_list(steps_text);
    FinderOptions opts;
    opts.numeric_steps = numeric_steps;
    WalkTrace trace = walk(F, ic, steps, degree, opts);
    std::string csv = walk_csv(trace);
    if (out.empty())
        std::cout << csv;
    else
        write_text_file(out, csv);
    return 0;
}

int cmd_classify(const std::string& ode, const std::string& recipe, const std::string& json_path) {
    TriPoly F = parse_ode(ode);
    UniPoly f = parse_recipe(recipe);
    BiPoly residual = apply_ode(F, f);
    std::string text = classification_json(residual, classify(residual));
    std::cout << text;
    if (!json_path.empty()) write_text_file(json_path, text);
    return 0;
}

int cmd_transported(const std::string& ode, const std::string& recipe, const std::string& rule_name,
                    const std::string& probes_text) {
    TriPoly F = parse_ode(ode);
    Recipe base;
    base.f = parse_recipe(recipe);
    base.degree = base.f.degree();
    TransportRule rule;
    if (!rule_from_string(rule_name, &rule)) throw Error("unknown rule '" + rule_name + "'");
    std::vector<CRat> probes = parse_rat_list(probes_text);
    std::vector<Classification> cls = check_transport(F, base, rule, probes);
    for (std::size_t i = 0; i < probes.size(); ++i) {
        std::cout << "x0 = " << probes[i].str() << ": " << to_string(cls[i].kind);
        if (cls[i].kind == ResidualClass::HyperTaylor)
            std::cout << " (r = " << cls[i].r.str() << ", n = " << cls[i].n << ")";
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"insola: initial value problems via infinitesimal roots of polynomial recipes"};
    app.require_subcommand(1);

    CommonSolveFlags solve_flags;
    CLI::App* solve = app.add_subcommand("solve", "run the root-relation solver over a degree range");
    add_solve_flags(solve, &solve_flags);

    CommonSolveFlags sweep_flags;
    std::string alphas_text;
    CLI::App* sweep = app.add_subcommand("sweep", "re-run the solver for several alpha* values");
    add_solve_flags(sweep, &sweep_flags);
    sweep->add_option("--alphas", alphas_text, "comma list of alpha* values")->required();

    std::string w_ode, w_y0, w_x0 = "0", w_steps, w_out;
    int w_degree = 2;
    bool w_numeric = false;
    CLI::App* walk_cmd = app.add_subcommand("walk", "step-size walker with exact rational values");
    walk_cmd->add_option("--ode", w_ode)->required();
    walk_cmd->add_option("--y0", w_y0, "initial value")->required();
    walk_cmd->add_option("--x0", w_x0, "initial abscissa (default 0)");
    walk_cmd->add_option("--steps", w_steps, "comma-separated rational steps");
    walk_cmd->add_option("--degree", w_degree, "recipe degree per step");
    walk_cmd->add_flag("--numeric-steps", w_numeric);
    walk_cmd->add_option("--out", w_out, "walk CSV path (stdout when omitted)");

    std::string c_ode, c_f, c_json;
    CLI::App* classify_cmd = app.add_subcommand("classify", "residual and class of a given recipe");
    classify_cmd->add_option("--ode", c_ode)->required();
    classify_cmd->add_option("--f", c_f, "recipe polynomial in x")->required();
    classify_cmd->add_option("--json", c_json, "also write the JSON here");

    std::string t_ode, t_f, t_rule, t_probes;
    CLI::App* transported_cmd =
        app.add_subcommand("transported", "classify a transported recipe at probe centers");
    transported_cmd->add_option("--ode", t_ode)->required();
    transported_cmd->add_option("--f", t_f, "base recipe polynomial in x")->required();
    transported_cmd->add_option("--rule", t_rule, "identity | shift | scale")->required();
    transported_cmd->add_option("--probes", t_probes, "comma-separated probe centers")->required();

    try {
        app.parse(argc, argv);
        if (*solve) return cmd_solve(solve_flags);
        if (*sweep) return cmd_sweep(sweep_flags, alphas_text);
        if (*walk_cmd) return cmd_walk(w_ode, w_y0, w_x0, w_steps, w_degree, w_numeric, w_out);
        if (*classify_cmd) return cmd_classify(c_ode, c_f, c_json);
        if (*transported_cmd) return cmd_transported(t_ode, t_f, t_rule, t_probes);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
