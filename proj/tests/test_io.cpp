#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "insola/io.hpp"
#include "insola/parse.hpp"

using namespace insola;

namespace {

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::vector<RelationPoint> sample_points() {
    std::vector<RelationPoint> pts;
    RelationPoint a;
    a.t = {0.1234567890123456789, -2.5e-17};
    a.value = {1.0 / 3.0, 7.25};
    a.grade = 3;
    a.filtered_survivor = true;
    a.residual_mag = 3.5e-12;
    RelationPoint b;
    b.t = {-1.75, 0.0};
    b.value = {0.0, -0.125};
    b.grade = 17;
    b.filtered_survivor = false;
    b.residual_mag = 0.0;
    pts.push_back(a);
    pts.push_back(b);
    return pts;
}

}  // namespace

TEST_CASE("points CSV round trip is exact") {
    auto pts = sample_points();
    std::string path = temp_path("insola_pts_test.csv");
    write_points_csv(path, pts);
    auto back = read_points_csv(path);
    REQUIRE(back.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(back[i].t == pts[i].t);
        CHECK(back[i].value == pts[i].value);
        CHECK(back[i].grade == pts[i].grade);
        CHECK(back[i].filtered_survivor == pts[i].filtered_survivor);
        CHECK(back[i].residual_mag == pts[i].residual_mag);
    }
    std::remove(path.c_str());
}

TEST_CASE("points CSV schema is pinned") {
    std::string body = points_csv(sample_points());
    CHECK(body.rfind("grade,re_t,im_t,re_value,im_value,survivor,residual\n", 0) == 0);
    CHECK(body.find("true") != std::string::npos);
    CHECK(body.find("false") != std::string::npos);
    CHECK(body.find("True") == std::string::npos);
}

TEST_CASE("walk CSV carries exact rationals") {
    WalkTrace tr = walk(parse_ode("(x+1)*z - 1"), {CRat(0), CRat(0)}, {CRat(1, 2), CRat(1, 2)}, 2);
    std::string csv = walk_csv(tr);
    CHECK(csv.rfind("t,value_re,value_im,step,degree,value_exact\n", 0) == 0);
    CHECK(csv.find(",3/8\n") != std::string::npos);
    CHECK(csv.find(",47/72\n") != std::string::npos);
    CHECK(csv.find("0.65277777777777779") != std::string::npos);
}

TEST_CASE("classification JSON includes residual and tag") {
    TriPoly F = parse_ode("z - 3*x^2");
    UniPoly f = parse_recipe("x^3");
    BiPoly residual = apply_ode(F, f);
    std::string j = classification_json(residual, classify(residual));
    CHECK(j.find("\"residual\": \"3*x*a + a^2\"") != std::string::npos);
    CHECK(j.find("\"kind\": \"HyperSolution\"") != std::string::npos);

    BiPoly r2 = apply_ode(parse_ode("z - y"), parse_recipe("1 + x + 1/2*x^2 + x^3"));
    std::string j2 = classification_json(r2, classify(r2));
    CHECK(j2.find("\"kind\": \"HyperLocal\"") != std::string::npos);
}

TEST_CASE("SVG output is deterministic byte for byte") {
    auto pts = sample_points();
    std::string a = scatter_svg(pts, RefName::Exp);
    std::string b = scatter_svg(pts, RefName::Exp);
    CHECK(a == b);
    CHECK(a.rfind("<svg", 0) == 0);
    CHECK(a.find("polyline") != std::string::npos);

    std::string no_ref = scatter_svg(pts, std::nullopt);
    CHECK(no_ref.find("polyline") == std::string::npos);

    // empty input still renders a frame
    std::string empty = scatter_svg({}, std::nullopt);
    CHECK(empty.rfind("<svg", 0) == 0);
}

TEST_CASE("sweep JSON lists one entry per alpha") {
    InsolaConfig cfg;
    cfg.F = parse_ode("z - y");
    cfg.recipe_source = OracleSource{RefName::Exp};
    cfg.degree_min = 2;
    cfg.degree_max = 3;
    auto entries = alpha_sweep(cfg, {1e-3, 1e-4});
    std::string j = sweep_json(entries);
    CHECK(j.find("\"alpha_star\": 0.001") != std::string::npos);
    CHECK(j.find("\"alpha_star\": 0.0001") != std::string::npos);
    CHECK(j.find("max_survivor_modulus") != std::string::npos);

    std::string svg = sweep_svg(entries);
    CHECK(svg == sweep_svg(entries));
}
