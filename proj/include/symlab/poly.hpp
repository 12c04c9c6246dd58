#pragma once

#include <map>
#include <string>
#include <vector>

#include "symlab/rational.hpp"

namespace symlab {

/// Exponent pair of a monomial x^a y^b.
struct Monomial2 {
    int a = 0;
    int b = 0;

    int degree() const { return a + b; }

    friend bool operator==(const Monomial2& l, const Monomial2& r) { return l.a == r.a && l.b == r.b; }
    friend bool operator!=(const Monomial2& l, const Monomial2& r) { return !(l == r); }
};

/// Graded lexicographic order with x > y, ascending: 1, x, y, x^2, xy, y^2, ...
struct GradedLexLess {
    bool operator()(const Monomial2& l, const Monomial2& r) const {
        if (l.degree() != r.degree()) return l.degree() < r.degree();
        return l.a > r.a;
    }
};

/// Bivariate polynomial with exact GaussianRational coefficients.
///
/// Terms are stored canonically: no zero coefficients, no duplicate
/// exponent keys. Two polynomials are equal iff their term maps are equal.
class GaussianPoly2 {
  public:
    using TermMap = std::map<Monomial2, GaussianRational, GradedLexLess>;

    GaussianPoly2() = default;
    explicit GaussianPoly2(GaussianRational constant) { add_term({0, 0}, std::move(constant)); }

    static GaussianPoly2 zero() { return {}; }
    static GaussianPoly2 one() { return GaussianPoly2(GaussianRational(1)); }
    static GaussianPoly2 x() { return monomial(1, 0, GaussianRational(1)); }
    static GaussianPoly2 y() { return monomial(0, 1, GaussianRational(1)); }

    static GaussianPoly2 monomial(int a, int b, GaussianRational c);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Max total degree; -1 for the zero polynomial.
    int degree() const;

    /// True when every coefficient has zero imaginary part.
    bool is_real() const;

    GaussianRational coefficient(int a, int b) const;

    /// Adds c * x^a y^b, erasing the key if the sum cancels.
    void add_term(Monomial2 m, GaussianRational c);

    GaussianPoly2 operator-() const;
    friend GaussianPoly2 operator+(const GaussianPoly2& l, const GaussianPoly2& r);
    friend GaussianPoly2 operator-(const GaussianPoly2& l, const GaussianPoly2& r);
    friend GaussianPoly2 operator*(const GaussianPoly2& l, const GaussianPoly2& r);
    GaussianPoly2 operator*(const GaussianRational& c) const;

    GaussianPoly2 pow(int n) const;

    enum class Var { x, y };

    /// Formal partial derivative, exact.
    GaussianPoly2 partial(Var v) const;

    GaussianRational evaluate(const GaussianRational& x0, const GaussianRational& y0) const;

    /// Substitutes (x, y) -> (-x, -y).
    GaussianPoly2 parity() const;

    friend bool operator==(const GaussianPoly2& l, const GaussianPoly2& r) { return l.terms_ == r.terms_; }
    friend bool operator!=(const GaussianPoly2& l, const GaussianPoly2& r) { return !(l == r); }

  private:
    TermMap terms_;
};

/// Canonical text form, graded-lex descending: "x^2-y^2", "(3/2+1/2i)*x^2*y".
/// to_string and parse_poly round-trip exactly.
std::string to_string(const GaussianPoly2& p);

GaussianPoly2 parse_poly(const std::string& text);

/// Ordered monomial list x^a y^b with a+b <= d.
struct TruncationBasis {
    int degree_bound = 0;
    std::vector<Monomial2> monomials;

    static TruncationBasis up_to(int d);

    std::size_t size() const { return monomials.size(); }

    /// Position in the graded-lex listing; -1 when degree > bound.
    int index_of(const Monomial2& m) const;
};

} // namespace symlab
