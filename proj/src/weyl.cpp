#include "symlab/weyl.hpp"

#include <algorithm>
#include <vector>

#include "symlab/errors.hpp"
#include "term_grammar.hpp"

namespace symlab {

namespace {

// C(n,k) as an exact integer.
mpz_class binomial(int n, int k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

mpz_class factorial(int n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

// Falling factorial m (m-1) ... (m-p+1); zero when p > m.
mpz_class falling(int m, int p) {
    mpz_class r = 1;
    for (int i = 0; i < p; ++i) r *= (m - i);
    return r;
}

} // namespace

WeylOp WeylOp::identity() {
    return term({0, 0, 0, 0}, GaussianRational(1));
}

WeylOp WeylOp::term(WeylMono m, GaussianRational c) {
    WeylOp op;
    op.add_term(m, std::move(c));
    return op;
}

WeylOp WeylOp::multiplication(const GaussianPoly2& p) {
    WeylOp op;
    for (const auto& [m, c] : p.terms()) op.add_term({m.a, m.b, 0, 0}, c);
    return op;
}

WeylOp WeylOp::derivative(int p, int q) {
    if (p < 0 || q < 0) throw config_error("negative derivative order");
    return term({0, 0, p, q}, GaussianRational(1));
}

int WeylOp::order() const {
    int r = -1;
    for (const auto& [m, c] : terms_) r = std::max(r, m.order());
    return r;
}

int WeylOp::coeff_degree() const {
    int r = -1;
    for (const auto& [m, c] : terms_) r = std::max(r, m.coeff_degree());
    return r;
}

void WeylOp::add_term(WeylMono m, GaussianRational c) {
    if (c.is_zero()) return;
    if (m.a < 0 || m.b < 0 || m.p < 0 || m.q < 0) throw config_error("negative exponent in operator term");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, std::move(c));
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

WeylOp WeylOp::operator-() const {
    WeylOp out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

WeylOp operator+(const WeylOp& l, const WeylOp& r) {
    WeylOp out = l;
    for (const auto& [m, c] : r.terms_) out.add_term(m, c);
    return out;
}

WeylOp operator-(const WeylOp& l, const WeylOp& r) {
    WeylOp out = l;
    for (const auto& [m, c] : r.terms_) out.add_term(m, -c);
    return out;
}

WeylOp WeylOp::operator*(const GaussianRational& c) const {
    WeylOp out;
    if (c.is_zero()) return out;
    for (const auto& [m, tc] : terms_) out.terms_.emplace(m, tc * c);
    return out;
}

WeylOp operator*(const WeylOp& l, const WeylOp& r) {
    WeylOp out;
    for (const auto& [ml, cl] : l.terms_) {
        for (const auto& [mr, cr] : r.terms_) {
            // Reorder dx^p dy^q across x^c y^d; the x and y pairs commute
            // with each other so the two contractions are independent.
            GaussianRational c0 = cl * cr;
            for (int k = 0; k <= std::min(ml.p, mr.a); ++k) {
                mpz_class wx = binomial(ml.p, k) * binomial(mr.a, k) * factorial(k);
                for (int j = 0; j <= std::min(ml.q, mr.b); ++j) {
                    mpz_class wy = binomial(ml.q, j) * binomial(mr.b, j) * factorial(j);
                    GaussianRational w = c0 * GaussianRational(mpq_class(wx * wy));
                    out.add_term({ml.a + mr.a - k, ml.b + mr.b - j,
                                  ml.p - k + mr.p, ml.q - j + mr.q},
                                 w);
                }
            }
        }
    }
    return out;
}

GaussianPoly2 WeylOp::apply(const GaussianPoly2& u) const {
    GaussianPoly2 out;
    for (const auto& [t, c] : terms_) {
        for (const auto& [m, uc] : u.terms()) {
            if (m.a < t.p || m.b < t.q) continue;
            mpz_class w = falling(m.a, t.p) * falling(m.b, t.q);
            out.add_term({m.a - t.p + t.a, m.b - t.q + t.b}, c * uc * GaussianRational(mpq_class(w)));
        }
    }
    return out;
}

WeylOp WeylOp::parity() const {
    WeylOp out;
    for (const auto& [m, c] : terms_) {
        bool odd = (m.a + m.b + m.p + m.q) % 2 != 0;
        out.terms_.emplace(m, odd ? -c : c);
    }
    return out;
}

WeylOp weyl_from_field(const GaussianPoly2& P, const GaussianPoly2& Q) {
    WeylOp op;
    for (const auto& [m, c] : P.terms()) op.add_term({m.a, m.b, 1, 0}, c);
    for (const auto& [m, c] : Q.terms()) op.add_term({m.a, m.b, 0, 1}, c);
    return op;
}

namespace {

struct WeylDisplayLess {
    bool operator()(const WeylMono& l, const WeylMono& r) const {
        if (l.order() != r.order()) return l.order() > r.order();
        if (l.p != r.p) return l.p > r.p;
        if (l.coeff_degree() != r.coeff_degree()) return l.coeff_degree() > r.coeff_degree();
        return l.a > r.a;
    }
};

} // namespace

std::string to_string(const WeylOp& op) {
    if (op.is_zero()) return "0";
    std::vector<std::pair<WeylMono, GaussianRational>> terms(op.terms().begin(), op.terms().end());
    std::sort(terms.begin(), terms.end(),
              [](const auto& l, const auto& r) { return WeylDisplayLess{}(l.first, r.first); });
    std::string s;
    bool leading = true;
    for (const auto& [m, c] : terms) {
        std::string mono;
        bool first = true;
        auto put = [&](const char* name, int e) {
            if (e == 0) return;
            if (!first) mono += "*";
            first = false;
            mono += name;
            if (e > 1) mono += "^" + std::to_string(e);
        };
        put("x", m.a);
        put("y", m.b);
        put("dx", m.p);
        put("dy", m.q);

        GaussianRational body = c;
        bool negative = false;
        if (c.is_real()) {
            negative = sgn(c.re) < 0;
        } else if (sgn(c.re) == 0) {
            negative = sgn(c.im) < 0;
        }
        if (negative) body = -c;
        if (!leading) s += negative ? "-" : "+";
        else if (negative) s += "-";
        std::string coeff = to_string(body);
        if (mono.empty()) s += coeff;
        else if (coeff == "1") s += mono;
        else s += coeff + "*" + mono;
        leading = false;
    }
    return s;
}

WeylOp parse_weyl(const std::string& text) {
    WeylOp out;
    detail::parse_terms(text, true, [&](int a, int b, int p, int q, const GaussianRational& c) {
        out.add_term({a, b, p, q}, c);
    });
    return out;
}

} // namespace symlab
