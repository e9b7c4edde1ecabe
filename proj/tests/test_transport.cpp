#include <doctest.h>

#include <random>

#include "insola/parse.hpp"
#include "insola/transport.hpp"

using namespace insola;

TEST_CASE("ode_at shifts only the x slot") {
    TriPoly F = parse_ode("x*z - 1");
    CHECK(ode_at(F, CRat(1)) == parse_ode("(x+1)*z - 1"));
    CHECK(ode_at(F, CRat(0)) == F);
    TriPoly G = parse_ode("z - y");
    CHECK(ode_at(G, CRat(7, 3)) == G);
    CHECK(ode_at(G, CRat(Rat(0), Rat(1))) == G);
}

TEST_CASE("transport_recipe applies the three rules") {
    UniPoly f = parse_recipe("x^2");
    CRat x0(5, 2);
    CHECK(transport_recipe(f, x0, TransportRule::Identity) == f);
    CHECK(transport_recipe(f, x0, TransportRule::Shift) ==
          parse_recipe("x^2 + 5*x + 25/4"));
    CHECK(transport_recipe(parse_recipe("x - 1/2*x^2"), CRat(2), TransportRule::Scale) ==
          parse_recipe("1/2*x - 1/8*x^2"));
    CHECK_THROWS_AS(transport_recipe(f, CRat(0), TransportRule::Scale), ZeroScale);
}

TEST_CASE("identity transport: equations without an x term keep their class") {
    TriPoly F = parse_ode("z - y");
    Recipe base;
    base.f = taylor_reference(RefName::Exp, 3);
    auto cls = check_transport(F, base, TransportRule::Identity,
                               {CRat(1), CRat(2), CRat(-1), CRat::i()});
    for (const Classification& c : cls) CHECK(c.kind == ResidualClass::HyperTaylor);

    // random x-free equations: classification invariant at random probes
    std::mt19937 rng(555);
    std::uniform_int_distribution<int> dz(0, 2), dy(0, 2), num(-4, 4), den(1, 3), nt(1, 3),
        deg(1, 4);
    for (int it = 0; it < 25; ++it) {
        TriPoly G;
        int n = nt(rng);
        for (int i = 0; i < n; ++i) {
            Rat q(num(rng), den(rng));
            q.canonicalize();
            G.add_term({dz(rng), dy(rng), 0}, CRat(q));
        }
        if (G.is_zero()) continue;
        std::vector<CRat> cs(static_cast<std::size_t>(deg(rng)) + 1);
        for (auto& cc : cs) {
            Rat q(num(rng), den(rng));
            q.canonicalize();
            cc = CRat(q);
        }
        Recipe r;
        r.f = UniPoly(std::move(cs));
        auto baseline = classify(apply_ode(G, r.f)).kind;
        for (const Classification& c : check_transport(G, r, TransportRule::Identity,
                                                       {CRat(2), CRat(-1, 3), CRat(7, 2)}))
            CHECK(c.kind == baseline);
    }
}

TEST_CASE("shift transport preserves hyper-solutions") {
    TriPoly F = parse_ode("z - 2*x");
    Recipe base;
    base.f = parse_recipe("x^2");
    auto cls = check_transport(F, base, TransportRule::Shift, {CRat(1), CRat(5)});
    for (const Classification& c : cls) CHECK(c.kind == ResidualClass::HyperSolution);

    std::mt19937 rng(99);
    std::uniform_int_distribution<int> num(-8, 8), den(1, 5);
    std::vector<CRat> probes;
    for (int i = 0; i < 10; ++i) {
        Rat q(num(rng), den(rng));
        q.canonicalize();
        probes.emplace_back(q);
    }
    for (const Classification& c : check_transport(F, base, TransportRule::Shift, probes))
        CHECK(c.kind == ResidualClass::HyperSolution);
}

TEST_CASE("scale transport turns r into r / x0^n") {
    // base recipe for (x+1)f' - 1 at center 1
    TriPoly F = parse_ode("x*z - 1");
    auto base_recipes = find_recipes(ode_at(F, CRat(1)), 2, {CRat(0), CRat(0)});
    REQUIRE(base_recipes.size() == 1);
    Recipe base = base_recipes[0];
    Classification base_cls = classify(apply_ode(ode_at(F, CRat(1)), base.f));
    REQUIRE(base_cls.kind == ResidualClass::HyperTaylor);

    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(1, 9), den(1, 5), sign(0, 1);
    std::vector<CRat> probes;
    for (int i = 0; i < 12; ++i) {
        Rat q(num(rng) * (sign(rng) ? 1 : -1), den(rng));
        q.canonicalize();
        probes.emplace_back(q);
    }
    auto cls = check_transport(F, base, TransportRule::Scale, probes);
    for (std::size_t i = 0; i < probes.size(); ++i) {
        REQUIRE(cls[i].kind == ResidualClass::HyperTaylor);
        CHECK(cls[i].n == base_cls.n);
        CRat pw(1);
        for (int k = 0; k < base_cls.n; ++k) pw *= probes[i];
        CHECK(cls[i].r == base_cls.r / pw);
    }
}

TEST_CASE("scale transport of the reciprocal-power problem at fixed probes") {
    // base recipe of (x+1)f' + f at center 1 is 1 - x + x^2
    TriPoly F = parse_ode("x*z + y");
    auto base = find_recipes(ode_at(F, CRat(1)), 2, {CRat(0), CRat(1)});
    REQUIRE(base.size() == 1);
    CHECK(base[0].f == parse_recipe("1 - x + x^2"));
    for (const Classification& c :
         check_transport(F, base[0], TransportRule::Scale, {CRat(2), CRat(3)}))
        CHECK(c.kind == ResidualClass::HyperTaylor);
}

TEST_CASE("s(t) from locally transported problems: quadratic flow") {
    TriPoly F = parse_ode("z - 2*x");
    InitialCondition ic{CRat(0), CRat(0)};
    CHECK(first_idea_eval(F, ic, CRat(1), 2) == CRat(1));
    CHECK(first_idea_eval(F, ic, CRat(2), 2) == CRat(4));
}

TEST_CASE("s(t) from locally transported problems: exponential flow") {
    TriPoly F = parse_ode("z - y");
    InitialCondition ic{CRat(0), CRat(1)};
    CHECK(first_idea_eval(F, ic, CRat(1), 2) == CRat(2));
    CHECK(first_idea_eval(F, ic, CRat(2), 2) == CRat(1));
    // degree 9 sharpens the estimates to the exact rationals
    CHECK(first_idea_eval(F, ic, CRat(1), 9) == CRat(45360, 16687));
    CHECK(first_idea_eval(F, ic, CRat(2), 9) == CRat(2835, 383));
}

TEST_CASE("window check on the re-centered residual") {
    TriPoly F = parse_ode("z - y");
    // the recipe of the re-centered problem is a hyper-solution: st == 0
    WindowCheck exact = check_good_window(parse_ode("z - 2*x"),
                                          parse_recipe("x^2 + 2*x + 1"), CRat(1), 1e-12, 256);
    CHECK(exact.ok);
    CHECK(exact.max_abs == 0.0);

    // cubic expansion of exp: residual -x^3/6, max modulus 1/6 on the circle
    WindowCheck good = check_good_window(F, taylor_reference(RefName::Exp, 3), CRat(1), 0.2, 256);
    CHECK(good.ok);
    CHECK(good.max_abs == doctest::Approx(1.05 / 6.0).epsilon(1e-3));

    // quadratic expansion misses: residual -x^2/2 reaches 1/2
    WindowCheck bad = check_good_window(F, taylor_reference(RefName::Exp, 2), CRat(1), 0.2, 256);
    CHECK_FALSE(bad.ok);
    CHECK(bad.max_abs == doctest::Approx(1.05 * 0.5).epsilon(1e-3));

    // eps = 0 rejects any nonzero residual
    CHECK_FALSE(check_good_window(F, taylor_reference(RefName::Exp, 5), CRat(1), 0.0, 64).ok);

    CHECK_THROWS_AS(check_good_window(F, parse_recipe("x"), CRat(0), 1.0, 64),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_good_window(F, parse_recipe("x"), CRat(1), 1.0, 4),
                    std::invalid_argument);
}

TEST_CASE("walker reproduces the shifted-log rationals") {
    WalkTrace tr = walk(parse_ode("(x+1)*z - 1"), {CRat(0), CRat(0)},
                        {CRat(1, 2), CRat(1, 2)}, 2);
    REQUIRE(tr.entries.size() == 3);
    CHECK(tr.entries[0].value == CRat(0));
    CHECK(tr.entries[1].value == CRat(3, 8));
    CHECK(tr.entries[2].value == CRat(47, 72));
    CHECK(tr.entries[1].t_cumulative == CRat(1, 2));
    CHECK(tr.entries[2].t_cumulative == CRat(1));
    // the second recipe is found at the re-centered equation
    CHECK(tr.entries[2].recipe.f == parse_recipe("3/8 + 2/3*x - 2/9*x^2"));
}

TEST_CASE("walker is exact on polynomially solvable problems") {
    WalkTrace tr = walk(parse_ode("z - 2*x"), {CRat(0), CRat(0)}, {CRat(1), CRat(1)}, 2);
    REQUIRE(tr.entries.size() == 3);
    CHECK(tr.entries[1].value == CRat(1));
    CHECK(tr.entries[2].value == CRat(4));

    // s(t) = t^2 at every grid point for a finer rational grid
    std::vector<CRat> steps(8, CRat(1, 4));
    WalkTrace fine = walk(parse_ode("z - 2*x"), {CRat(0), CRat(0)}, steps, 2);
    for (const WalkEntry& e : fine.entries) CHECK(e.value == e.t_cumulative * e.t_cumulative);
}

TEST_CASE("walker honors a nonzero starting center") {
    // starting x*z - 1 at x0 = 1 is the same problem as starting
    // (x+1)*z - 1 at the origin
    WalkTrace tr = walk(parse_ode("x*z - 1"), {CRat(1), CRat(0)}, {CRat(1, 2), CRat(1, 2)}, 2);
    REQUIRE(tr.entries.size() == 3);
    CHECK(tr.entries[1].value == CRat(3, 8));
    CHECK(tr.entries[2].value == CRat(47, 72));
    CHECK(tr.entries[0].t_cumulative == CRat(1));
    CHECK(tr.entries[2].t_cumulative == CRat(2));
}

TEST_CASE("walker trivia and errors") {
    WalkTrace tr = walk(parse_ode("z - y"), {CRat(0), CRat(5, 3)}, {}, 2);
    REQUIRE(tr.entries.size() == 1);
    CHECK(tr.entries[0].t_cumulative == CRat(0));
    CHECK(tr.entries[0].value == CRat(5, 3));
    CHECK_FALSE(tr.entries[0].has_recipe);

    CHECK_THROWS_AS(walk(parse_ode("z - y"), {CRat(0), CRat(1)}, {CRat(0)}, 2),
                    std::invalid_argument);
}
