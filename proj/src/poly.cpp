#include "symlab/poly.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "symlab/errors.hpp"
#include "term_grammar.hpp"

namespace symlab {

mpq_class rational_from_string(const std::string& s) {
    if (s.empty()) throw parse_error("empty rational literal");
    std::size_t slash = s.find('/');
    auto check_digits = [&](std::size_t from, std::size_t to) {
        if (from >= to) throw parse_error("malformed rational literal '" + s + "'");
        for (std::size_t i = from; i < to; ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                throw parse_error("malformed rational literal '" + s + "'");
    };
    std::size_t start = (s[0] == '-') ? 1 : 0;
    if (slash == std::string::npos) {
        check_digits(start, s.size());
    } else {
        check_digits(start, slash);
        check_digits(slash + 1, s.size());
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw parse_error("malformed rational literal '" + s + "'");
    if (sgn(q.get_den()) == 0) throw parse_error("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const mpq_class& q) {
    return q.get_str();
}

std::string to_string(const GaussianRational& c) {
    if (c.is_zero()) return "0";
    if (c.is_real()) return to_string(c.re);
    std::string im_body = (abs(c.im) == 1) ? "i" : to_string(mpq_class(abs(c.im))) + "i";
    if (sgn(c.re) == 0) return (sgn(c.im) < 0 ? "-" : "") + im_body;
    std::string s = "(" + to_string(c.re);
    s += (sgn(c.im) < 0) ? "-" : "+";
    s += im_body;
    s += ")";
    return s;
}

GaussianPoly2 GaussianPoly2::monomial(int a, int b, GaussianRational c) {
    if (a < 0 || b < 0) throw config_error("negative exponent in monomial");
    GaussianPoly2 p;
    p.add_term({a, b}, std::move(c));
    return p;
}

int GaussianPoly2::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

bool GaussianPoly2::is_real() const {
    for (const auto& [m, c] : terms_)
        if (!c.is_real()) return false;
    return true;
}

GaussianRational GaussianPoly2::coefficient(int a, int b) const {
    auto it = terms_.find({a, b});
    return it == terms_.end() ? GaussianRational() : it->second;
}

void GaussianPoly2::add_term(Monomial2 m, GaussianRational c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, std::move(c));
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

GaussianPoly2 GaussianPoly2::operator-() const {
    GaussianPoly2 r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

GaussianPoly2 operator+(const GaussianPoly2& l, const GaussianPoly2& r) {
    GaussianPoly2 out = l;
    for (const auto& [m, c] : r.terms_) out.add_term(m, c);
    return out;
}

GaussianPoly2 operator-(const GaussianPoly2& l, const GaussianPoly2& r) {
    GaussianPoly2 out = l;
    for (const auto& [m, c] : r.terms_) out.add_term(m, -c);
    return out;
}

GaussianPoly2 operator*(const GaussianPoly2& l, const GaussianPoly2& r) {
    GaussianPoly2 out;
    for (const auto& [ml, cl] : l.terms_)
        for (const auto& [mr, cr] : r.terms_)
            out.add_term({ml.a + mr.a, ml.b + mr.b}, cl * cr);
    return out;
}

GaussianPoly2 GaussianPoly2::operator*(const GaussianRational& c) const {
    GaussianPoly2 out;
    if (c.is_zero()) return out;
    for (const auto& [m, tc] : terms_) out.terms_.emplace(m, tc * c);
    return out;
}

GaussianPoly2 GaussianPoly2::pow(int n) const {
    if (n < 0) throw config_error("negative polynomial power");
    GaussianPoly2 out = one();
    for (int i = 0; i < n; ++i) out = out * (*this);
    return out;
}

GaussianPoly2 GaussianPoly2::partial(Var v) const {
    GaussianPoly2 out;
    for (const auto& [m, c] : terms_) {
        if (v == Var::x) {
            if (m.a > 0) out.add_term({m.a - 1, m.b}, c * GaussianRational(m.a));
        } else {
            if (m.b > 0) out.add_term({m.a, m.b - 1}, c * GaussianRational(m.b));
        }
    }
    return out;
}

GaussianRational GaussianPoly2::evaluate(const GaussianRational& x0, const GaussianRational& y0) const {
    GaussianRational acc;
    for (const auto& [m, c] : terms_) {
        GaussianRational t = c;
        for (int i = 0; i < m.a; ++i) t *= x0;
        for (int i = 0; i < m.b; ++i) t *= y0;
        acc += t;
    }
    return acc;
}

GaussianPoly2 GaussianPoly2::parity() const {
    GaussianPoly2 out;
    for (const auto& [m, c] : terms_)
        out.terms_.emplace(m, (m.degree() % 2 == 0) ? c : -c);
    return out;
}

// ---------------------------------------------------------------------------
// text grammar
// ---------------------------------------------------------------------------

namespace {

// Display order: degree descending, then x-exponent descending.
struct DisplayLess {
    bool operator()(const Monomial2& l, const Monomial2& r) const {
        if (l.degree() != r.degree()) return l.degree() > r.degree();
        return l.a > r.a;
    }
};

void append_factor(std::string& s, const char* name, int e, bool& first) {
    if (e == 0) return;
    if (!first) s += "*";
    first = false;
    s += name;
    if (e > 1) s += "^" + std::to_string(e);
}

// Shared by the polynomial and operator printers. `mono` is the factor part
// ("x^2*y"), possibly empty for a constant term.
void append_term(std::string& s, const GaussianRational& c, const std::string& mono, bool leading) {
    GaussianRational body = c;
    bool negative = false;
    if (c.is_real()) {
        negative = sgn(c.re) < 0;
        if (negative) body = -c;
    } else if (sgn(c.re) == 0) {
        negative = sgn(c.im) < 0;
        if (negative) body = -c;
    }
    if (!leading) s += negative ? "-" : "+";
    else if (negative) s += "-";
    std::string coeff = to_string(body);
    if (mono.empty()) {
        s += coeff;
    } else if (coeff == "1") {
        s += mono;
    } else {
        s += coeff + "*" + mono;
    }
}

struct TermScanner {
    const std::string& text;
    std::size_t pos = 0;

    explicit TermScanner(const std::string& t) : text(t) {}

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    [[noreturn]] void fail(const std::string& what) const {
        throw parse_error(what + " at position " + std::to_string(pos) + " in '" + text + "'");
    }

    void expect(char c) {
        if (done() || text[pos] != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }

    std::string scan_number() {
        std::size_t start = pos;
        while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
        if (pos == start) fail("expected digits");
        if (!done() && peek() == '/') {
            ++pos;
            std::size_t den = pos;
            while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
            if (pos == den) fail("expected denominator digits");
        }
        return text.substr(start, pos - start);
    }

    int scan_exponent() {
        if (done() || peek() != '^') return 1;
        ++pos;
        std::size_t start = pos;
        while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
        if (pos == start) fail("expected exponent digits");
        long e = std::stol(text.substr(start, pos - start));
        if (e > 1000) fail("exponent too large");
        return static_cast<int>(e);
    }

    // rational with optional sign, optionally followed by 'i'
    GaussianRational scan_signed_part() {
        bool neg = false;
        if (!done() && (peek() == '+' || peek() == '-')) {
            neg = peek() == '-';
            ++pos;
        }
        if (!done() && peek() == 'i') {
            ++pos;
            return {mpq_class(0), mpq_class(neg ? -1 : 1)};
        }
        mpq_class q = rational_from_string(scan_number());
        if (!done() && peek() == 'i') {
            ++pos;
            return {mpq_class(0), neg ? mpq_class(-q) : q};
        }
        return {neg ? mpq_class(-q) : q, mpq_class(0)};
    }

    GaussianRational scan_paren_complex() {
        expect('(');
        GaussianRational v = scan_signed_part();
        while (!done() && (peek() == '+' || peek() == '-')) v += scan_signed_part();
        expect(')');
        return v;
    }
};

} // namespace

std::string to_string(const GaussianPoly2& p) {
    if (p.is_zero()) return "0";
    std::vector<std::pair<Monomial2, GaussianRational>> terms(p.terms().begin(), p.terms().end());
    std::sort(terms.begin(), terms.end(),
              [](const auto& l, const auto& r) { return DisplayLess{}(l.first, r.first); });
    std::string s;
    bool leading = true;
    for (const auto& [m, c] : terms) {
        std::string mono;
        bool first = true;
        append_factor(mono, "x", m.a, first);
        append_factor(mono, "y", m.b, first);
        append_term(s, c, mono, leading);
        leading = false;
    }
    return s;
}

namespace detail {

// Shared term grammar. When `allow_derivatives` is false any dx/dy factor
// is rejected, which is how plain polynomials stay plain.
void parse_terms(const std::string& text, bool allow_derivatives,
                 const std::function<void(int, int, int, int, const GaussianRational&)>& emit) {
    std::string stripped;
    stripped.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) stripped += c;
    if (stripped.empty()) throw parse_error("empty polynomial text");

    TermScanner sc(stripped);
    bool first_term = true;
    while (!sc.done()) {
        bool neg = false;
        if (sc.peek() == '+' || sc.peek() == '-') {
            neg = sc.peek() == '-';
            ++sc.pos;
        } else if (!first_term) {
            sc.fail("expected '+' or '-' between terms");
        }
        first_term = false;

        GaussianRational coeff(1);
        if (neg) coeff = GaussianRational(-1);
        int a = 0, b = 0, p = 0, q = 0;
        bool saw_factor = false;
        while (true) {
            if (sc.done()) break;
            char c = sc.peek();
            if (c == '(') {
                coeff *= sc.scan_paren_complex();
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                mpq_class v = rational_from_string(sc.scan_number());
                if (!sc.done() && sc.peek() == 'i') {
                    ++sc.pos;
                    coeff *= GaussianRational(mpq_class(0), v);
                } else {
                    coeff *= GaussianRational(v);
                }
            } else if (c == 'i') {
                ++sc.pos;
                coeff *= GaussianRational::unit_im();
            } else if (c == 'd') {
                ++sc.pos;
                if (sc.done() || (sc.peek() != 'x' && sc.peek() != 'y')) sc.fail("expected dx or dy");
                if (!allow_derivatives)
                    throw parse_error("derivative factor not allowed in a polynomial: '" + text + "'");
                char var = sc.peek();
                ++sc.pos;
                int e = sc.scan_exponent();
                (var == 'x' ? p : q) += e;
            } else if (c == 'x' || c == 'y') {
                ++sc.pos;
                int e = sc.scan_exponent();
                (c == 'x' ? a : b) += e;
            } else {
                sc.fail(std::string("unexpected character '") + c + "'");
            }
            saw_factor = true;
            if (sc.done() || sc.peek() != '*') break;
            ++sc.pos;
            if (sc.done()) sc.fail("dangling '*'");
        }
        if (!saw_factor) sc.fail("empty term");
        emit(a, b, p, q, coeff);
    }
}

} // namespace detail

GaussianPoly2 parse_poly(const std::string& text) {
    GaussianPoly2 out;
    detail::parse_terms(text, false, [&](int a, int b, int, int, const GaussianRational& c) {
        out.add_term({a, b}, c);
    });
    return out;
}

TruncationBasis TruncationBasis::up_to(int d) {
    if (d < 0) throw config_error("truncation degree must be nonnegative");
    TruncationBasis basis;
    basis.degree_bound = d;
    basis.monomials.reserve(static_cast<std::size_t>((d + 1) * (d + 2) / 2));
    for (int t = 0; t <= d; ++t)
        for (int a = t; a >= 0; --a) basis.monomials.push_back({a, t - a});
    return basis;
}

int TruncationBasis::index_of(const Monomial2& m) const {
    if (m.degree() > degree_bound) return -1;
    int t = m.degree();
    // Offset of the degree-t block plus the descending-a position inside it.
    return t * (t + 1) / 2 + (t - m.a);
}

} // namespace symlab
