#include <doctest.h>

#include <algorithm>
#include <random>

#include "insola/hyper.hpp"
#include "insola/parse.hpp"
#include "insola/roots.hpp"

using namespace insola;

TEST_CASE("hyper_diff of x^3 is 3x^2 + 3xa + a^2") {
    BiPoly d = hyper_diff(parse_recipe("x^3"));
    CHECK(d.coeff(2, 0) == CRat(3));
    CHECK(d.coeff(1, 1) == CRat(3));
    CHECK(d.coeff(0, 2) == CRat(1));
    CHECK(d.term_count() == 3);

    CHECK(hyper_diff(parse_recipe("5/7")).is_zero());
    CHECK(hyper_diff(parse_recipe("x")) == BiPoly::constant(CRat(1)));
}

TEST_CASE("setting a = 0 in hyper_diff recovers the formal derivative") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> deg(0, 8), num(-5, 5), den(1, 4);
    for (int it = 0; it < 50; ++it) {
        std::vector<CRat> cs(static_cast<std::size_t>(deg(rng)) + 1);
        for (auto& c : cs) {
            Rat re(num(rng), den(rng));
            re.canonicalize();
            Rat im(num(rng), den(rng));
            im.canonicalize();
            c = CRat(re, im);
        }
        UniPoly f(std::move(cs));
        CHECK(at_alpha_zero(hyper_diff(f)) == f.derivative());
    }
}

TEST_CASE("residual worked examples") {
    // F = z - 3x^2, f = x^3  ->  a*(3x + a)
    BiPoly r1 = apply_ode(parse_ode("z - 3*x^2"), parse_recipe("x^3"));
    BiPoly expect1 = BiPoly::alpha() * (CRat(3) * BiPoly::x() + BiPoly::alpha());
    CHECK(r1 == expect1);

    // F = z - y with the cubic expansion of exp
    BiPoly r2 = apply_ode(parse_ode("z - y"), parse_recipe("1 + x + 1/2*x^2 + 1/6*x^3"));
    BiPoly expect2;
    expect2.add_term({3, 0}, CRat(-1, 6));
    expect2.add_term({0, 2}, CRat(1, 6));
    expect2.add_term({1, 1}, CRat(1, 2));
    expect2.add_term({0, 1}, CRat(1, 2));
    CHECK(r2 == expect2);

    // same equation, cubic term bumped to x^3
    BiPoly r3 = apply_ode(parse_ode("z - y"), parse_recipe("1 + x + 1/2*x^2 + x^3"));
    BiPoly expect3;
    expect3.add_term({3, 0}, CRat(-1));
    expect3.add_term({2, 0}, CRat(5, 2));
    expect3.add_term({0, 2}, CRat(1));
    expect3.add_term({1, 1}, CRat(3));
    expect3.add_term({0, 1}, CRat(1, 2));
    CHECK(r3 == expect3);
}

TEST_CASE("classification of the worked residuals") {
    Classification c1 = classify(apply_ode(parse_ode("z - 3*x^2"), parse_recipe("x^3")));
    CHECK(c1.kind == ResidualClass::HyperSolution);
    CHECK(c1.domain == Domain::AllFinite);
    CHECK(c1.G == CRat(3) * BiPoly::x() + BiPoly::alpha());

    Classification c2 =
        classify(apply_ode(parse_ode("z - y"), parse_recipe("1 + x + 1/2*x^2 + 1/6*x^3")));
    CHECK(c2.kind == ResidualClass::HyperTaylor);
    CHECK(c2.domain == Domain::InfinitesimalOnly);
    CHECK(c2.r == CRat(-1, 6));
    CHECK(c2.n == 3);
    // G = 1/6 a + 1/2 x + 1/2
    CHECK(c2.G.coeff(0, 1) == CRat(1, 6));
    CHECK(c2.G.coeff(1, 0) == CRat(1, 2));
    CHECK(c2.G.coeff(0, 0) == CRat(1, 2));

    Classification c3 =
        classify(apply_ode(parse_ode("z - y"), parse_recipe("1 + x + 1/2*x^2 + x^3")));
    CHECK(c3.kind == ResidualClass::HyperLocal);
    CHECK(c3.P == parse_recipe("-x^3 + 5/2*x^2"));

    // the zero residual is a hyper-solution
    Classification c4 = classify(BiPoly());
    CHECK(c4.kind == ResidualClass::HyperSolution);
}

TEST_CASE("classification precedence edge cases") {
    // P = x^2 + x^3: no constant term but not a monomial -> HyperLocal at best
    BiPoly r = BiPoly::from_x_poly(parse_recipe("x^2 + x^3"));
    CHECK(classify(r).kind == ResidualClass::HyperLocal);

    // constant a-free part -> None
    BiPoly rc = BiPoly::from_x_poly(parse_recipe("1 + x"));
    CHECK(classify(rc).kind == ResidualClass::None);

    // deg_x(G) == n is rejected for HyperTaylor (strict inequality)
    BiPoly re;
    re.add_term({2, 0}, CRat(1));   // P = x^2
    re.add_term({2, 1}, CRat(1));   // G has x-degree 2 as well
    Classification ce = classify(re);
    CHECK(ce.kind != ResidualClass::HyperTaylor);
    CHECK(ce.kind != ResidualClass::HyperSolution);

    // deg_x(G) == deg(P) is also rejected for HyperLocal
    BiPoly rl;
    rl.add_term({2, 0}, CRat(1));
    rl.add_term({3, 0}, CRat(1));
    rl.add_term({3, 1}, CRat(1));
    CHECK(classify(rl).kind == ResidualClass::None);
}

namespace {

std::mt19937 rng2(4242);

UniPoly random_recipe() {
    std::uniform_int_distribution<int> deg(0, 4), num(-4, 4), den(1, 3);
    std::vector<CRat> cs(static_cast<std::size_t>(deg(rng2)) + 1);
    for (auto& c : cs) {
        Rat re(num(rng2), den(rng2));
        re.canonicalize();
        c = CRat(re);
    }
    return UniPoly(std::move(cs));
}

TriPoly random_ode() {
    std::uniform_int_distribution<int> dz(0, 2), dy(0, 2), dx(0, 3), num(-4, 4), den(1, 3),
        nterms(1, 4);
    TriPoly F;
    int n = nterms(rng2);
    for (int i = 0; i < n; ++i) {
        Rat re(num(rng2), den(rng2));
        re.canonicalize();
        F.add_term({dz(rng2), dy(rng2), dx(rng2)}, CRat(re));
    }
    return F;
}

}  // namespace

TEST_CASE("theorem implications hold on random residuals") {
    int checked = 0;
    for (int it = 0; it < 200; ++it) {
        TriPoly F = random_ode();
        UniPoly f = random_recipe();
        BiPoly residual = apply_ode(F, f);
        Classification c = classify(residual);

        // implication chain on the decomposition predicates
        if (c.kind == ResidualClass::HyperSolution) {
            CHECK(hyper_taylor_form(residual, /*allow_zero_r=*/true));
            CHECK(hyper_local_form(residual));
        }
        if (c.kind == ResidualClass::HyperTaylor) CHECK(hyper_local_form(residual));

        // hyper-solution iff the a-free part vanishes
        CHECK((c.kind == ResidualClass::HyperSolution) == at_alpha_zero(residual).is_zero());
        ++checked;
    }
    CHECK(checked == 200);
}

TEST_CASE("scaled residual roots shrink with alpha for a hyper Taylor recipe") {
    // residual of the degree-6 exponential expansion: r x^6 + a G
    BiPoly residual = apply_ode(parse_ode("z - y"), [] {
        std::vector<CRat> cs(7);
        for (unsigned k = 0; k <= 6; ++k) cs[k] = CRat(Rat(1) / rat_factorial(k));
        return UniPoly(std::move(cs));
    }());
    REQUIRE(classify(residual).kind == ResidualClass::HyperTaylor);

    double prev = 1e300;
    for (double alpha : {1e-3, 1e-4, 1e-5}) {
        FloatPoly fs = substitute_alpha(residual, alpha);
        auto roots = roots_complex(fs, 1e-10);
        double maxmod = 0.0;
        for (auto& r : roots) maxmod = std::max(maxmod, std::abs(r));
        CHECK(maxmod < prev);
        prev = maxmod;
    }
}
