#include <doctest.h>

#include <random>

#include "insola/parse.hpp"

using namespace insola;

TEST_CASE("parse_ode worked examples") {
    TriPoly p = parse_ode("(x+1)*z - 1");
    CHECK(p.coeff(1, 0, 1) == CRat(1));
    CHECK(p.coeff(1, 0, 0) == CRat(1));
    CHECK(p.coeff(0, 0, 0) == CRat(-1));
    CHECK(p.terms().size() == 3);

    TriPoly q = parse_ode("z - y");
    CHECK(q.coeff(1, 0, 0) == CRat(1));
    CHECK(q.coeff(0, 1, 0) == CRat(-1));
    CHECK(q.terms().size() == 2);

    CHECK(parse_ode("0").is_zero());
    CHECK(parse_ode("x*z-1") == parse_ode(" x * z - 1 "));
}

TEST_CASE("parse_recipe worked examples") {
    UniPoly f = parse_recipe("1 + x + 1/2*x^2");
    CHECK(f.coeff(0) == CRat(1));
    CHECK(f.coeff(1) == CRat(1));
    CHECK(f.coeff(2) == CRat(1, 2));

    UniPoly g = parse_recipe("x - 1/2*x^2");
    CHECK(g.coeff(0) == CRat(0));
    CHECK(g.coeff(1) == CRat(1));
    CHECK(g.coeff(2) == CRat(-1, 2));

    CHECK_THROWS_AS(parse_recipe(""), ParseError);
}

TEST_CASE("decimal literals convert exactly") {
    CHECK(parse_crat("0.5") == CRat(1, 2));
    CHECK(parse_crat("0.1") == CRat(1, 10));
    CHECK(parse_crat("2.25") == CRat(9, 4));
    CHECK(parse_crat("0.125") == CRat(1, 8));
    CHECK(parse_ode("0.1*x").coeff(0, 0, 1) == CRat(1, 10));
}

TEST_CASE("imaginary unit and complex constants") {
    CHECK(parse_crat("i") == CRat::i());
    CHECK(parse_crat("3 + 2*i") == CRat(Rat(3), Rat(2)));
    CHECK(parse_crat("i*i") == CRat(-1));
    CHECK(parse_crat("-i") == CRat(Rat(0), Rat(-1)));
    CHECK(parse_crat("(1+i)^2") == CRat(Rat(0), Rat(2)));
}

TEST_CASE("grammar errors carry offsets and expectations") {
    try {
        parse_ode("x + ");
        FAIL("should have thrown");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 4);
        CHECK(!e.expected().empty());
    }

    try {
        parse_ode("x ^ -2");
        FAIL("should have thrown");
    } catch (const NegativeExponent& e) {
        CHECK(e.offset() == 4);
    }

    try {
        parse_ode("2*w + 1");
        FAIL("should have thrown");
    } catch (const UnknownIdentifier& e) {
        CHECK(e.name() == "w");
        CHECK(e.offset() == 2);
    }

    // y and z are not recipe variables
    CHECK_THROWS_AS(parse_recipe("y + 1"), UnknownIdentifier);
    CHECK_THROWS_AS(parse_recipe("z"), UnknownIdentifier);
    CHECK_NOTHROW(parse_ode("y + z"));

    // implicit multiplication is rejected
    CHECK_THROWS_AS(parse_ode("xy"), UnknownIdentifier);
    CHECK_THROWS_AS(parse_ode("2(x+1)"), ParseError);
    // division is only a literal form
    CHECK_THROWS_AS(parse_ode("x/2"), ParseError);
    CHECK_THROWS_AS(parse_ode("1/0"), ParseError);
    CHECK_THROWS_AS(parse_ode("1.abc"), ParseError);
}

namespace {

std::mt19937 rng(777);

CRat rnd_coeff() {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 7);
    Rat re(num(rng), den(rng));
    re.canonicalize();
    Rat im(num(rng), den(rng));
    im.canonicalize();
    std::uniform_int_distribution<int> kind(0, 2);
    switch (kind(rng)) {
        case 0: return CRat(re);
        case 1: return CRat(Rat(0), im);
        default: return CRat(re, im);
    }
}

}  // namespace

TEST_CASE("print/parse round trip on random equations") {
    std::uniform_int_distribution<int> deg(0, 4);
    std::uniform_int_distribution<int> nterms(0, 6);
    for (int it = 0; it < 200; ++it) {
        TriPoly p;
        int n = nterms(rng);
        for (int i = 0; i < n; ++i) p.add_term({deg(rng), deg(rng), deg(rng)}, rnd_coeff());
        CAPTURE(to_string(p));
        CHECK(parse_ode(to_string(p)) == p);
    }
}

TEST_CASE("exponent bounds") {
    CHECK(parse_recipe("x^0") == parse_recipe("1"));
    CHECK_THROWS_AS(parse_ode("x^99999"), ParseError);
}
