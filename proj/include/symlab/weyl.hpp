#pragma once

#include <map>
#include <string>

#include "symlab/poly.hpp"

namespace symlab {

/// One normal-ordered generator word x^a y^b dx^p dy^q.
struct WeylMono {
    int a = 0; ///< coefficient exponent of x
    int b = 0; ///< coefficient exponent of y
    int p = 0; ///< order in dx
    int q = 0; ///< order in dy

    int coeff_degree() const { return a + b; }
    int order() const { return p + q; }

    friend bool operator==(const WeylMono& l, const WeylMono& r) {
        return l.a == r.a && l.b == r.b && l.p == r.p && l.q == r.q;
    }
};

struct WeylMonoLess {
    bool operator()(const WeylMono& l, const WeylMono& r) const {
        if (l.order() != r.order()) return l.order() < r.order();
        if (l.p != r.p) return l.p > r.p;
        if (l.coeff_degree() != r.coeff_degree()) return l.coeff_degree() < r.coeff_degree();
        return l.a > r.a;
    }
};

/// Differential operator with polynomial coefficients, kept in normal order
/// (multiplications left of derivatives). Normal order is canonical: two
/// operators are equal iff their term maps are equal.
class WeylOp {
  public:
    using TermMap = std::map<WeylMono, GaussianRational, WeylMonoLess>;

    WeylOp() = default;

    static WeylOp zero() { return {}; }
    static WeylOp identity();
    static WeylOp term(WeylMono m, GaussianRational c);
    /// Multiplication operator u -> p*u.
    static WeylOp multiplication(const GaussianPoly2& p);
    /// dx^p dy^q.
    static WeylOp derivative(int p, int q);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Max p+q over terms; -1 for the zero operator.
    int order() const;
    /// Max a+b over terms; -1 for the zero operator.
    int coeff_degree() const;

    void add_term(WeylMono m, GaussianRational c);

    WeylOp operator-() const;
    friend WeylOp operator+(const WeylOp& l, const WeylOp& r);
    friend WeylOp operator-(const WeylOp& l, const WeylOp& r);
    WeylOp operator*(const GaussianRational& c) const;

    /// Composition l after r, normal-ordered via the Leibniz reordering
    /// dx^p x^c = sum_k C(p,k) C(c,k) k! x^(c-k) dx^(p-k).
    friend WeylOp operator*(const WeylOp& l, const WeylOp& r);

    /// Image polynomial, exact.
    GaussianPoly2 apply(const GaussianPoly2& u) const;

    /// Conjugation by the parity substitution (x,y) -> (-x,-y): each term
    /// picks up (-1)^(a+b+p+q).
    WeylOp parity() const;

    friend bool operator==(const WeylOp& l, const WeylOp& r) { return l.terms_ == r.terms_; }
    friend bool operator!=(const WeylOp& l, const WeylOp& r) { return !(l == r); }

  private:
    TermMap terms_;
};

/// P dx + Q dy.
WeylOp weyl_from_field(const GaussianPoly2& P, const GaussianPoly2& Q);

/// Text form extends the polynomial grammar with dx/dy factors, e.g.
/// "x^2*dx^2+4*x*dx+2". Round-trips exactly with parse_weyl.
std::string to_string(const WeylOp& op);

WeylOp parse_weyl(const std::string& text);

} // namespace symlab
