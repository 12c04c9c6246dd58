#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "symlab/errors.hpp"
#include "symlab/poly.hpp"
#include "symlab/weyl.hpp"

using namespace symlab;

namespace {

GaussianPoly2 P(const std::string& s) { return parse_poly(s); }
WeylOp W(const std::string& s) { return parse_weyl(s); }

GaussianPoly2 random_poly(std::mt19937& rng, int max_deg, int max_terms) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::uniform_int_distribution<int> nterms(1, max_terms);
    GaussianPoly2 p;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        int a = deg(rng), b = deg(rng);
        p.add_term({a, b}, GaussianRational(mpq_class(coeff(rng)), mpq_class(coeff(rng))));
    }
    return p;
}

WeylOp random_weyl(std::mt19937& rng, int max_exp, int max_terms) {
    std::uniform_int_distribution<int> e(0, max_exp);
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> nterms(1, max_terms);
    WeylOp op;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i)
        op.add_term({e(rng), e(rng), e(rng), e(rng)},
                    GaussianRational(mpq_class(coeff(rng)), mpq_class(coeff(rng))));
    return op;
}

} // namespace

TEST_CASE("rational parsing stays in lowest terms") {
    CHECK(rational_from_string("4/6") == mpq_class(2, 3));
    CHECK(rational_from_string("-10/5") == mpq_class(-2));
    CHECK_THROWS_AS(rational_from_string("1/0"), parse_error);
    CHECK_THROWS_AS(rational_from_string("a"), parse_error);
    CHECK_THROWS_AS(rational_from_string("1.5"), parse_error);
}

TEST_CASE("gaussian rational arithmetic is exact") {
    GaussianRational i = GaussianRational::unit_im();
    CHECK(i * i == GaussianRational(-1));
    GaussianRational z(mpq_class(3, 2), mpq_class(1, 2));
    CHECK(z * z.conj() == GaussianRational(z.norm()));
    CHECK(z / z == GaussianRational(1));
    CHECK_THROWS_AS(z / GaussianRational(0), std::domain_error);
}

TEST_CASE("poly_arith examples") {
    CHECK(P("x+y") * P("x-y") == P("x^2-y^2"));
    GaussianPoly2 p = P("3*x^2*y-1/2*y");
    CHECK(p + GaussianPoly2::zero() == p);
    CHECK(P("x^2+x*y") * P("y") == P("x^2*y+x*y^2"));
}

TEST_CASE("poly_partial examples") {
    CHECK(P("x^2*y").partial(GaussianPoly2::Var::x) == P("2*x*y"));
    CHECK(P("7").partial(GaussianPoly2::Var::y) == GaussianPoly2::zero());
    CHECK(P("x^3+x*y^2").partial(GaussianPoly2::Var::x) == P("3*x^2+y^2"));
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937 rng(20240901);
    for (int trial = 0; trial < 40; ++trial) {
        GaussianPoly2 a = random_poly(rng, 3, 4);
        GaussianPoly2 b = random_poly(rng, 3, 4);
        GaussianPoly2 c = random_poly(rng, 3, 4);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a + b == b + a);
        CHECK(a - a == GaussianPoly2::zero());
    }
}

TEST_CASE("degree and evaluation") {
    CHECK(GaussianPoly2::zero().degree() == -1);
    CHECK(P("x^2*y+x").degree() == 3);
    GaussianRational v = P("x^2+2*x*y").evaluate(GaussianRational(mpq_class(1, 2)), GaussianRational(3));
    CHECK(v == GaussianRational(mpq_class(13, 4)));
}

TEST_CASE("polynomial text round-trips exactly") {
    CHECK(to_string(P("x^2-y^2")) == "x^2-y^2");
    CHECK(to_string(P("(3/2+1/2i)*x^2*y")) == "(3/2+1/2i)*x^2*y");
    CHECK(to_string(GaussianPoly2::zero()) == "0");
    CHECK(to_string(P("-x+3")) == "-x+3");
    CHECK(to_string(P("i*y-i*y")) == "0");

    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        GaussianPoly2 p = random_poly(rng, 4, 6);
        CHECK(parse_poly(to_string(p)) == p);
    }
}

TEST_CASE("parser rejects malformed input") {
    CHECK_THROWS_AS(parse_poly("x^"), parse_error);
    CHECK_THROWS_AS(parse_poly("x+"), parse_error);
    CHECK_THROWS_AS(parse_poly("x y"), parse_error);
    CHECK_THROWS_AS(parse_poly("2**x"), parse_error);
    CHECK_THROWS_AS(parse_poly(""), parse_error);
    CHECK_THROWS_AS(parse_poly("z"), parse_error);
    CHECK_THROWS_AS(parse_poly("x*dx"), parse_error);
    CHECK_THROWS_AS(parse_poly("(1+"), parse_error);
}

TEST_CASE("weyl_from_field examples") {
    CHECK(weyl_from_field(P("1"), P("0")) == W("dx"));
    CHECK(weyl_from_field(P("x"), P("y")) == W("x*dx+y*dy"));
    CHECK(weyl_from_field(P("x"), P("0")) == W("x*dx"));
    CHECK(weyl_from_field(P("x"), P("y")).order() == 1);
}

TEST_CASE("weyl_apply examples") {
    CHECK(W("x*dx+y*dy").apply(P("x^2*y")) == P("3*x^2*y"));
    CHECK(W("dx").apply(P("y^5")) == GaussianPoly2::zero());
    CHECK(W("y*dx-x*dy").apply(P("x^2+y^2")) == GaussianPoly2::zero());
}

TEST_CASE("weyl_compose examples") {
    CHECK(W("dx") * W("x") == W("x*dx+1"));
    WeylOp a = W("3*x*dx^2-y*dy");
    CHECK(a * WeylOp::identity() == a);
    CHECK(WeylOp::identity() * a == a);
    CHECK(W("dx^2") * W("x^2") == W("x^2*dx^2+4*x*dx+2"));
}

TEST_CASE("compose is associative and consistent with apply") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        WeylOp a = random_weyl(rng, 2, 3);
        WeylOp b = random_weyl(rng, 2, 3);
        WeylOp c = random_weyl(rng, 2, 3);
        CHECK((a * b) * c == a * (b * c));
        GaussianPoly2 u = random_poly(rng, 4, 4);
        CHECK((a * b).apply(u) == a.apply(b.apply(u)));
    }
}

TEST_CASE("normal form is canonical") {
    // Same operator assembled in two different orders of generators.
    WeylOp left = W("dx") * W("x") * W("dy") * W("y");
    WeylOp right = (W("dy") * W("y")) * (W("dx") * W("x"));
    CHECK(left == right);

    std::mt19937 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        WeylOp a = random_weyl(rng, 2, 3);
        CHECK(parse_weyl(to_string(a)) == a);
    }
}

TEST_CASE("weyl order and coefficient degree") {
    CHECK(W("x^2*dx").order() == 1);
    CHECK(W("x^2*dx").coeff_degree() == 2);
    CHECK(WeylOp::zero().order() == -1);
    CHECK(W("x*dx^2+dy").order() == 2);
}

TEST_CASE("parity substitution") {
    WeylOp d = W("x^2*dx+y*dy+1");
    WeylOp p = d.parity();
    CHECK(p == W("-x^2*dx+y*dy+1"));
    CHECK(p.parity() == d);
}
