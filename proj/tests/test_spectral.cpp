#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "symlab/errors.hpp"
#include "symlab/spectral.hpp"

using namespace symlab;

namespace {

WeylOp W(const std::string& s) { return parse_weyl(s); }
GaussianPoly2 P(const std::string& s) { return parse_poly(s); }

const GaussianRational I = GaussianRational::unit_im();

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

// Field with prescribed quadratic leading part plus random lower-order junk.
WeylOp quadratic_field(int a, int b, int c, int d, int e, int f, std::mt19937* rng) {
    GaussianPoly2 P2 = P("x^2") * GaussianRational(a) + P("x*y") * GaussianRational(b) +
                       P("y^2") * GaussianRational(c);
    GaussianPoly2 Q2 = P("x^2") * GaussianRational(d) + P("x*y") * GaussianRational(e) +
                       P("y^2") * GaussianRational(f);
    if (rng) {
        std::uniform_int_distribution<int> lo(-3, 3);
        P2 = P2 + P("x") * GaussianRational(lo(*rng)) + P("y") * GaussianRational(lo(*rng)) +
             GaussianPoly2(GaussianRational(lo(*rng)));
        Q2 = Q2 + P("x") * GaussianRational(lo(*rng)) + P("y") * GaussianRational(lo(*rng)) +
             GaussianPoly2(GaussianRational(lo(*rng)));
    }
    return weyl_from_field(P2, Q2);
}

} // namespace

TEST_CASE("conjugation of single generators") {
    CHECK(fourier_conjugate(W("dx")) == WeylOp::multiplication(P("x")) * (-I));
    CHECK(fourier_conjugate(W("x")) == W("dx") * (-I));
    CHECK(fourier_conjugate(W("dy")) == WeylOp::multiplication(P("y")) * (-I));
    CHECK(fourier_conjugate(WeylOp::identity()) == WeylOp::identity());
}

TEST_CASE("conjugation of x^2 dx") {
    WeylOp expected = (W("x*dx^2") + W("dx") * GaussianRational(2)) * I;
    CHECK(fourier_conjugate(W("x^2*dx")) == expected);
    CHECK(to_string(fourier_conjugate(W("x^2*dx"))) == "i*x*dx^2+2i*dx");
}

TEST_CASE("canonical commutation survives conjugation") {
    WeylOp comm = W("dx") * W("x") - W("x") * W("dx");
    REQUIRE(comm == WeylOp::identity());
    CHECK(fourier_conjugate(comm) == WeylOp::identity());
    // Both sides of the hand computation: conj(dx o x) = (-i x)(-i dx) = -x dx.
    CHECK(fourier_conjugate(W("dx") * W("x")) ==
          WeylOp::multiplication(P("x")) * W("dx") * GaussianRational(-1));
}

TEST_CASE("order and coefficient degree swap under conjugation") {
    std::vector<WeylOp> ops = {W("dx"), W("x^2*dx"), W("x*dx+y*dy"), W("x^3*dy+x*y*dx"),
                               W("dx^2+dy^2"), W("x^2*dx+y^2*dy")};
    for (const WeylOp& D : ops) {
        WeylOp Dt = fourier_conjugate(D);
        CHECK(Dt.order() == D.coeff_degree());
        CHECK(Dt.coeff_degree() == D.order());
    }
}

TEST_CASE("conjugation is multiplicative") {
    CHECK(conjugation_is_homomorphism(W("dx"), W("x")));
    CHECK(conjugation_is_homomorphism(WeylOp::identity(), WeylOp::identity()));
    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> e(0, 3);
    std::uniform_int_distribution<int> coeff(-4, 4);
    auto random_low_order = [&]() {
        WeylOp op;
        for (int t = 0; t < 3; ++t) {
            int p = e(rng) % 2, q = e(rng) % 2; // per-term order <= 2
            op.add_term({e(rng), e(rng), p, q},
                        GaussianRational(mpq_class(coeff(rng)), mpq_class(coeff(rng))));
        }
        return op;
    };
    for (int trial = 0; trial < 20; ++trial) {
        WeylOp a = random_low_order();
        WeylOp b = random_low_order();
        CHECK(conjugation_is_homomorphism(a, b));
    }
    CHECK_THROWS_AS(conjugation_is_homomorphism(W("dx^4"), W("x")), config_error);
}

TEST_CASE("double conjugation is the parity substitution") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 25; ++trial) {
        WeylOp a = random_weyl(rng, 3, 4);
        CHECK(fourier_conjugate(fourier_conjugate(a)) == a.parity());
    }
}

TEST_CASE("principal symbol read-off") {
    SymbolPoly s1 = principal_symbol(W("x*dx+y*dy"));
    CHECK(s1.order == 1);
    CHECK(s1.coefficient(1, 0) == P("x"));
    CHECK(s1.coefficient(0, 1) == P("y"));

    SymbolPoly s2 = principal_symbol(W("dx^2+dy^2"));
    CHECK(s2.order == 2);
    CHECK(s2.coefficient(2, 0) == P("1"));
    CHECK(s2.coefficient(1, 1) == GaussianPoly2::zero());
    CHECK(s2.coefficient(0, 2) == P("1"));

    CHECK_THROWS_AS(principal_symbol(WeylOp::zero()), config_error);
}

TEST_CASE("conjugated quadratic fields have the expected principal part") {
    std::mt19937 rng(31415);
    std::uniform_int_distribution<int> ci(-5, 5);
    for (int trial = 0; trial < 10; ++trial) {
        int a = ci(rng), b = ci(rng), c = ci(rng), d = ci(rng), e = ci(rng), f = ci(rng);
        if (a == 0 && b == 0 && c == 0 && d == 0 && e == 0 && f == 0) a = 1;
        WeylOp D = quadratic_field(a, b, c, d, e, f, &rng);
        WeylOp Dt = fourier_conjugate(D);
        REQUIRE(Dt.order() == 2);
        SymbolPoly s = principal_symbol(Dt);
        GaussianPoly2 ax_dy = (P("x") * GaussianRational(a) + P("y") * GaussianRational(d)) * I;
        GaussianPoly2 bx_ey = (P("x") * GaussianRational(b) + P("y") * GaussianRational(e)) * I;
        GaussianPoly2 cx_fy = (P("x") * GaussianRational(c) + P("y") * GaussianRational(f)) * I;
        CHECK(s.coefficient(2, 0) == ax_dy);
        CHECK(s.coefficient(1, 1) == bx_ey);
        CHECK(s.coefficient(0, 2) == cx_fy);
    }
}

TEST_CASE("ellipticity of the shipped coefficient set") {
    // a = c = f = 1, b = d = e = 0.
    WeylOp D = quadratic_field(1, 0, 1, 0, 0, 1, nullptr);
    SymbolPoly s = principal_symbol(fourier_conjugate(D));
    RationalRect box{mpq_class(-1), mpq_class(1), mpq_class(-1), mpq_class(1)};
    EllipticityReport rep = ellipticity_report(s, box, 5);

    CHECK(rep.removed_phase == GaussianRational::unit_im());
    CHECK(rep.discriminant == P("-4*x^2-4*x*y"));
    CHECK(to_string(rep.discriminant) == "-4*x^2-4*x*y");

    auto verdict_at = [&](const mpq_class& x, const mpq_class& y) {
        for (const auto& g : rep.grid)
            if (g.x == x && g.y == y) return g.verdict;
        FAIL("sample point missing");
        return EllipticVerdict::indefinite;
    };
    CHECK(verdict_at(1, 0) == EllipticVerdict::elliptic);
    CHECK(verdict_at(0, 1) == EllipticVerdict::degenerate);
    // The whole x = 0 grid line degenerates and is marked.
    int zero_line = 0;
    for (std::size_t idx : rep.degenerate_samples)
        if (rep.grid[idx].x == 0) ++zero_line;
    CHECK(zero_line == 5);

    // A grid whose x coordinates miss the x = 0 line certifies that
    // degeneracy through sign-change pairs instead of exact zeros.
    EllipticityReport rep4 = ellipticity_report(s, box, 4);
    CHECK_FALSE(rep4.sign_change_pairs.empty());
}

TEST_CASE("laplacian symbol is elliptic everywhere") {
    SymbolPoly s = principal_symbol(W("dx^2+dy^2"));
    RationalRect box{mpq_class(-2), mpq_class(2), mpq_class(-2), mpq_class(2)};
    EllipticityReport rep = ellipticity_report(s, box, 4);
    CHECK(rep.removed_phase == GaussianRational(1));
    for (const auto& g : rep.grid) CHECK(g.verdict == EllipticVerdict::elliptic);
    CHECK(rep.degenerate_samples.empty());
}

TEST_CASE("ellipticity rejects bad symbols") {
    RationalRect box{mpq_class(-1), mpq_class(1), mpq_class(-1), mpq_class(1)};
    CHECK_THROWS_AS(ellipticity_report(principal_symbol(W("dx")), box, 3), order_error);

    // Hand-built symbol with an inhomogeneous covariable part.
    SymbolPoly mixed;
    mixed.order = 2;
    mixed.coeffs[Monomial2{2, 0}] = P("1");
    mixed.coeffs[Monomial2{1, 0}] = P("x");
    CHECK_THROWS_AS(ellipticity_report(mixed, box, 3), order_error);

    // Mixed real/imaginary coefficients cannot be realified by one phase.
    SymbolPoly bad = principal_symbol(W("dx^2+i*dy^2"));
    CHECK_THROWS_AS(ellipticity_report(bad, box, 3), config_error);

    SymbolPoly ok = principal_symbol(W("dx^2+dy^2"));
    CHECK_THROWS_AS(ellipticity_report(ok, box, 1), config_error);
}

TEST_CASE("symbol text rendering") {
    SymbolPoly s = principal_symbol(fourier_conjugate(quadratic_field(1, 0, 0, 0, 0, 0, nullptr)));
    CHECK(to_string(s) == "(i*x)*xi^2");
}
