#include "symlab/spectral.hpp"

#include <algorithm>

#include "symlab/errors.hpp"

namespace symlab {

WeylOp fourier_conjugate(const WeylOp& D) {
    WeylOp out;
    const GaussianRational minus_i(mpq_class(0), mpq_class(-1));
    for (const auto& [t, c] : D.terms()) {
        // x^a y^b dx^p dy^q  ->  (-i)^(a+b+p+q) dx^a dy^b x^p y^q,
        // then normal-order the derivative-times-multiplication tail.
        GaussianRational phase(1);
        for (int i = 0; i < t.a + t.b + t.p + t.q; ++i) phase *= minus_i;
        WeylOp piece = WeylOp::term({0, 0, t.a, t.b}, c * phase) *
                       WeylOp::term({t.p, t.q, 0, 0}, GaussianRational(1));
        out = out + piece;
    }
    return out;
}

bool conjugation_is_homomorphism(const WeylOp& A, const WeylOp& B) {
    if (A.order() > 3 || B.order() > 3)
        throw config_error("homomorphism check is guarded to operators of order <= 3");
    return fourier_conjugate(A * B) == fourier_conjugate(A) * fourier_conjugate(B);
}

GaussianPoly2 SymbolPoly::coefficient(int p, int q) const {
    auto it = coeffs.find({p, q});
    return it == coeffs.end() ? GaussianPoly2::zero() : it->second;
}

SymbolPoly principal_symbol(const WeylOp& D) {
    if (D.is_zero()) throw config_error("principal symbol of the zero operator");
    SymbolPoly s;
    s.order = D.order();
    for (const auto& [t, c] : D.terms()) {
        if (t.order() != s.order) continue;
        s.coeffs[Monomial2{t.p, t.q}].add_term({t.a, t.b}, c);
    }
    return s;
}

std::string to_string(const SymbolPoly& s) {
    std::string out;
    bool first = true;
    // Covariable monomials in descending graded-lex order.
    for (auto it = s.coeffs.rbegin(); it != s.coeffs.rend(); ++it) {
        const auto& [m, poly] = *it;
        if (poly.is_zero()) continue;
        if (!first) out += " + ";
        first = false;
        out += "(" + to_string(poly) + ")";
        auto put = [&](const char* name, int e) {
            if (e == 0) return;
            out += "*";
            out += name;
            if (e > 1) out += "^" + std::to_string(e);
        };
        put("xi", m.a);
        put("eta", m.b);
    }
    return first ? "0" : out;
}

const char* to_string(EllipticVerdict v) {
    switch (v) {
        case EllipticVerdict::elliptic: return "elliptic";
        case EllipticVerdict::degenerate: return "degenerate";
        default: return "indefinite";
    }
}

namespace {

// Finds a unit factor u in {1, i} with s/u real-coefficient; sign ambiguity
// does not matter because the discriminant is quadratic in the symbol.
GaussianRational find_global_phase(const SymbolPoly& s) {
    bool all_real = true;
    bool all_imag = true;
    for (const auto& [m, poly] : s.coeffs) {
        for (const auto& [mm, c] : poly.terms()) {
            if (sgn(c.im) != 0) all_real = false;
            if (sgn(c.re) != 0) all_imag = false;
        }
    }
    if (all_real) return GaussianRational(1);
    if (all_imag) return GaussianRational::unit_im();
    throw config_error("symbol is not real up to a global phase; ellipticity verdicts "
                       "would be ill-defined");
}

} // namespace

EllipticityReport ellipticity_report(const SymbolPoly& s, const RationalRect& region, int resolution) {
    if (s.order != 2) throw order_error("ellipticity classification expects an order-2 symbol");
    for (const auto& [m, poly] : s.coeffs)
        if (m.degree() != 2 && !poly.is_zero())
            throw order_error("symbol is not homogeneous of degree 2 in the covariables");
    if (resolution < 2) throw config_error("grid resolution must be at least 2");
    if (region.x0 > region.x1 || region.y0 > region.y1)
        throw config_error("empty sample rectangle");

    EllipticityReport rep;
    rep.resolution = resolution;
    rep.region = region;
    rep.removed_phase = find_global_phase(s);

    GaussianRational inv_phase = GaussianRational(1) / rep.removed_phase;
    rep.A = s.coefficient(2, 0) * inv_phase;
    rep.B = s.coefficient(1, 1) * inv_phase;
    rep.C = s.coefficient(0, 2) * inv_phase;
    rep.discriminant = rep.B * rep.B - rep.A * rep.C * GaussianRational(4);

    const int g = resolution;
    // Explicit return type forces evaluation of the gmpxx expression
    // template before its temporaries vanish.
    auto coord = [&](const mpq_class& lo, const mpq_class& hi, int i) -> mpq_class {
        mpq_class step = (hi - lo) * i;
        return lo + step / (g - 1);
    };

    for (int iy = 0; iy < g; ++iy) {
        mpq_class y = coord(region.y0, region.y1, iy);
        for (int ix = 0; ix < g; ++ix) {
            mpq_class x = coord(region.x0, region.x1, ix);
            GaussianRational v = rep.discriminant.evaluate(GaussianRational(x), GaussianRational(y));
            if (sgn(v.im) != 0) throw std::logic_error("realified discriminant has imaginary part");
            EllipticVerdict verdict = sgn(v.re) < 0   ? EllipticVerdict::elliptic
                                      : sgn(v.re) == 0 ? EllipticVerdict::degenerate
                                                       : EllipticVerdict::indefinite;
            rep.grid.push_back({x, y, v.re, verdict});
            if (verdict == EllipticVerdict::degenerate)
                rep.degenerate_samples.push_back(rep.grid.size() - 1);
        }
    }

    auto disc_sign = [&](std::size_t idx) { return sgn(rep.grid[idx].disc); };
    for (int iy = 0; iy < g; ++iy) {
        for (int ix = 0; ix < g; ++ix) {
            std::size_t idx = static_cast<std::size_t>(iy) * g + ix;
            if (ix + 1 < g) {
                std::size_t right = idx + 1;
                if (disc_sign(idx) * disc_sign(right) < 0) rep.sign_change_pairs.emplace_back(idx, right);
            }
            if (iy + 1 < g) {
                std::size_t up = idx + static_cast<std::size_t>(g);
                if (disc_sign(idx) * disc_sign(up) < 0) rep.sign_change_pairs.emplace_back(idx, up);
            }
        }
    }
    return rep;
}

} // namespace symlab
