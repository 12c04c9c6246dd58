#include "symlab/cocycle.hpp"

#include <cmath>

#include "symlab/errors.hpp"

namespace symlab {

namespace {

void require_same_surface(const std::shared_ptr<const ParamSurface>& a,
                          const std::shared_ptr<const ParamSurface>& b) {
    if (a != b) throw config_error("surface mismatch between arguments");
}

CJet to_cjet(const Jet1d& j) {
    return {cplx(j.v, 0.0), cplx(j.du, 0.0), cplx(j.dv, 0.0)};
}

cplx pairwise_sum_complex(std::vector<cplx>& terms) {
    if (terms.empty()) return {};
    std::size_t n = terms.size();
    while (n > 1) {
        std::size_t half = (n + 1) / 2;
        for (std::size_t i = 0; i + half < n; ++i) terms[i] += terms[i + half];
        n = half;
    }
    return terms[0];
}

} // namespace

SurfaceFunction SurfaceFunction::constant(std::shared_ptr<const ParamSurface> s, cplx c) {
    return {std::move(s), [c](int, double, double) { return CJet::constant(c); }};
}

SurfaceFunction SurfaceFunction::gauss_component(std::shared_ptr<const ParamSurface> s, int axis) {
    if (axis < 0 || axis > 2) throw config_error("gauss component axis must be 0, 1 or 2");
    auto surf = s;
    return {std::move(s), [surf, axis](int chart, double u, double v) {
                GaussMapSample g = gauss_map(surf->charts[static_cast<std::size_t>(chart)], u, v);
                switch (axis) {
                    case 0: return to_cjet({g.normal.x, g.normal_du.x, g.normal_dv.x});
                    case 1: return to_cjet({g.normal.y, g.normal_du.y, g.normal_dv.y});
                    default: return to_cjet({g.normal.z, g.normal_du.z, g.normal_dv.z});
                }
            }};
}

SurfaceFunction SurfaceFunction::ambient(std::shared_ptr<const ParamSurface> s,
                                         std::function<CJet(const Vec3<Jet1d>&)> fn) {
    auto surf = s;
    return {std::move(s), [surf, fn = std::move(fn)](int chart, double u, double v) {
                return fn(chart_point(surf->charts[static_cast<std::size_t>(chart)], u, v));
            }};
}

SurfaceFunction SurfaceFunction::conjugated() const {
    auto e = eval_;
    return {surface_, [e](int chart, double u, double v) {
                CJet j = e(chart, u, v);
                return CJet{std::conj(j.v), std::conj(j.du), std::conj(j.dv)};
            }};
}

SurfaceFunction operator+(const SurfaceFunction& a, const SurfaceFunction& b) {
    require_same_surface(a.surface_, b.surface_);
    auto ea = a.eval_, eb = b.eval_;
    return {a.surface_,
            [ea, eb](int c, double u, double v) { return ea(c, u, v) + eb(c, u, v); }};
}

SurfaceFunction operator-(const SurfaceFunction& a, const SurfaceFunction& b) {
    require_same_surface(a.surface_, b.surface_);
    auto ea = a.eval_, eb = b.eval_;
    return {a.surface_,
            [ea, eb](int c, double u, double v) { return ea(c, u, v) - eb(c, u, v); }};
}

SurfaceFunction operator*(const SurfaceFunction& a, const SurfaceFunction& b) {
    require_same_surface(a.surface_, b.surface_);
    auto ea = a.eval_, eb = b.eval_;
    return {a.surface_,
            [ea, eb](int c, double u, double v) { return ea(c, u, v) * eb(c, u, v); }};
}

SurfaceFunction operator*(cplx s, const SurfaceFunction& a) {
    auto ea = a.eval_;
    return {a.surface_, [s, ea](int c, double u, double v) { return s * ea(c, u, v); }};
}

SurfaceFunction random_trig_function(std::shared_ptr<const ParamSurface> s, std::mt19937& rng) {
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    bool fully_periodic = true;
    for (const Chart& c : s->charts)
        if (!c.periodic_u || !c.periodic_v) fully_periodic = false;

    if (fully_periodic) {
        std::uniform_int_distribution<int> freq(-2, 2);
        struct Mode {
            double c, s;
            int m, n;
        };
        std::vector<Mode> modes;
        for (int j = 0; j < 3; ++j) modes.push_back({amp(rng), amp(rng), freq(rng), freq(rng)});
        return {s, [modes](int, double u, double v) {
                    CJet acc = CJet::constant(0.0);
                    for (const Mode& md : modes) {
                        double ph = md.m * u + md.n * v;
                        // value and chart partials of c cos(ph) + s sin(ph)
                        double val = md.c * std::cos(ph) + md.s * std::sin(ph);
                        double dph = -md.c * std::sin(ph) + md.s * std::cos(ph);
                        acc = acc + CJet{cplx(val), cplx(dph * md.m), cplx(dph * md.n)};
                    }
                    return acc;
                }};
    }

    // Random real polynomial of degree <= 2 in the ambient coordinates.
    std::array<double, 10> coeff{};
    for (double& c : coeff) c = amp(rng);
    return SurfaceFunction::ambient(s, [coeff](const Vec3<Jet1d>& p) {
        Jet1d one{1.0, 0.0, 0.0};
        std::array<Jet1d, 10> basis = {one,       p.x,       p.y,       p.z,       p.x * p.x,
                                       p.y * p.y, p.z * p.z, p.x * p.y, p.y * p.z, p.z * p.x};
        Jet1d acc{};
        for (std::size_t i = 0; i < basis.size(); ++i) acc = acc + coeff[i] * basis[i];
        return to_cjet(acc);
    });
}

Mat2Field Mat2Field::identity(std::shared_ptr<const ParamSurface> s) {
    SurfaceFunction one = SurfaceFunction::constant(s, 1.0);
    SurfaceFunction zero = SurfaceFunction::constant(s, 0.0);
    return {s, {one, zero, zero, one}};
}

Mat2Field Mat2Field::adjoint() const {
    return {surface_,
            {e_[0].conjugated(), e_[2].conjugated(), e_[1].conjugated(), e_[3].conjugated()}};
}

Mat2Field operator+(const Mat2Field& a, const Mat2Field& b) {
    require_same_surface(a.surface_, b.surface_);
    return {a.surface_,
            {a.e_[0] + b.e_[0], a.e_[1] + b.e_[1], a.e_[2] + b.e_[2], a.e_[3] + b.e_[3]}};
}

Mat2Field operator-(const Mat2Field& a, const Mat2Field& b) {
    require_same_surface(a.surface_, b.surface_);
    return {a.surface_,
            {a.e_[0] - b.e_[0], a.e_[1] - b.e_[1], a.e_[2] - b.e_[2], a.e_[3] - b.e_[3]}};
}

Mat2Field operator*(const Mat2Field& a, const Mat2Field& b) {
    require_same_surface(a.surface_, b.surface_);
    std::array<SurfaceFunction, 4> out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out[static_cast<std::size_t>(2 * i + j)] =
                a.at(i, 0) * b.at(0, j) + a.at(i, 1) * b.at(1, j);
    return {a.surface_, std::move(out)};
}

Mat2Field operator*(cplx s, const Mat2Field& a) {
    return {a.surface_, {s * a.e_[0], s * a.e_[1], s * a.e_[2], s * a.e_[3]}};
}

cplx tau(const SurfaceFunction& f0, const SurfaceFunction& f1, const SurfaceFunction& f2, int n) {
    require_same_surface(f0.surface(), f1.surface());
    require_same_surface(f0.surface(), f2.surface());
    const ParamSurface& s = *f0.surface();
    cplx total = 0.0;
    for (std::size_t ci = 0; ci < s.charts.size(); ++ci) {
        QuadratureRule q = make_quadrature(s.charts[ci], n);
        std::vector<cplx> terms;
        terms.reserve(q.u_nodes.size() * q.v_nodes.size());
        for (std::size_t i = 0; i < q.u_nodes.size(); ++i)
            for (std::size_t j = 0; j < q.v_nodes.size(); ++j) {
                double u = q.u_nodes[i], v = q.v_nodes[j];
                CJet a = f0(static_cast<int>(ci), u, v);
                CJet b = f1(static_cast<int>(ci), u, v);
                CJet c = f2(static_cast<int>(ci), u, v);
                terms.push_back(q.u_weights[i] * q.v_weights[j] *
                                (a.v * (b.du * c.dv - b.dv * c.du)));
            }
        total += pairwise_sum_complex(terms);
    }
    return total;
}

double cyclic_defect(const SurfaceFunction& f0, const SurfaceFunction& f1,
                     const SurfaceFunction& f2, int n) {
    return std::abs(tau(f0, f1, f2, n) - tau(f1, f2, f0, n));
}

double hochschild_defect(const SurfaceFunction& f0, const SurfaceFunction& f1,
                         const SurfaceFunction& f2, const SurfaceFunction& f3, int n) {
    cplx v = tau(f0 * f1, f2, f3, n) - tau(f0, f1 * f2, f3, n) + tau(f0, f1, f2 * f3, n) -
             tau(f3 * f0, f1, f2, n);
    return std::abs(v);
}

cplx tau_mat2(const Mat2Field& A, const Mat2Field& B, const Mat2Field& C, int n) {
    require_same_surface(A.surface(), B.surface());
    require_same_surface(A.surface(), C.surface());
    cplx total = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) total += tau(A.at(i, j), B.at(j, k), C.at(k, i), n);
    return total;
}

namespace {

Mat2Field bott_from_components(std::shared_ptr<const ParamSurface> s, bool corrected_diagonal) {
    SurfaceFunction f = SurfaceFunction::gauss_component(s, 0);
    SurfaceFunction g = SurfaceFunction::gauss_component(s, 1);
    SurfaceFunction h = SurfaceFunction::gauss_component(s, 2);
    SurfaceFunction one = SurfaceFunction::constant(s, 1.0);
    const cplx half = 0.5;
    const cplx im(0.0, 1.0);
    SurfaceFunction top = corrected_diagonal ? half * (one + h) : half * (one - h);
    return {s, {top, half * (f + im * g), half * (f - im * g), half * (one - h)}};
}

} // namespace

Mat2Field bott_projection(std::shared_ptr<const ParamSurface> s) {
    return bott_from_components(std::move(s), true);
}

Mat2Field bott_projection_uncorrected(std::shared_ptr<const ParamSurface> s) {
    return bott_from_components(std::move(s), false);
}

double sup_norm(const Mat2Field& M, int n) {
    const ParamSurface& s = *M.surface();
    double worst = 0.0;
    for (std::size_t ci = 0; ci < s.charts.size(); ++ci) {
        QuadratureRule q = make_quadrature(s.charts[ci], n);
        for (double u : q.u_nodes)
            for (double v : q.v_nodes)
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        worst = std::max(worst,
                                         std::abs(M.at(i, j)(static_cast<int>(ci), u, v).v));
    }
    return worst;
}

double projection_defect(const Mat2Field& E, int n) {
    double idem = sup_norm(E * E - E, n);
    double selfadj = sup_norm(E - E.adjoint(), n);
    return std::max(idem, selfadj);
}

cplx lambda_estimate(const ParamSurface& s, int n) {
    double denom = integrate_fdgdh(s, StokesOrdering::fgh, n);
    if (std::abs(denom) < 1e-9)
        throw numeric_error("lambda estimate undefined: integral of f dg dh is below 1e-9");
    auto sp = std::make_shared<const ParamSurface>(s);
    Mat2Field E = bott_projection(sp);
    return tau_mat2(E, E, E, n) / denom;
}

namespace {

std::vector<double> linspace(double lo, double hi, int samples) {
    if (samples < 2) throw config_error("curve needs at least 2 samples");
    std::vector<double> ts(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i)
        ts[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (samples - 1);
    return ts;
}

// Projection built from arbitrary (f,g,h) evaluators over a base surface.
Mat2Field projection_from_vector(std::shared_ptr<const ParamSurface> base,
                                 std::function<Vec3<Jet1d>(int, double, double)> vec) {
    auto component = [base, vec](int axis) {
        return SurfaceFunction(base, [vec, axis](int chart, double u, double v) {
            Vec3<Jet1d> w = vec(chart, u, v);
            switch (axis) {
                case 0: return to_cjet(w.x);
                case 1: return to_cjet(w.y);
                default: return to_cjet(w.z);
            }
        });
    };
    SurfaceFunction f = component(0), g = component(1), h = component(2);
    SurfaceFunction one = SurfaceFunction::constant(base, 1.0);
    const cplx half = 0.5;
    const cplx im(0.0, 1.0);
    return {base, {half * (one + h), half * (f + im * g), half * (f - im * g), half * (one - h)}};
}

} // namespace

ProjectionCurve bumped_sphere_curve(double t_max, int samples, int k) {
    ProjectionCurve curve;
    curve.t_min = 0.0;
    curve.t_max = t_max;
    curve.ts = linspace(0.0, t_max, samples);
    auto base = std::make_shared<const ParamSurface>(make_sphere());
    curve.at = [base, k](double t) {
        // Gauss map of the deformed surface pulled back to the common
        // parameter domain.
        auto deformed = std::make_shared<const ParamSurface>(make_bumped_sphere(t, k));
        return projection_from_vector(base, [deformed](int chart, double u, double v) {
            GaussMapSample s = gauss_map(deformed->charts[static_cast<std::size_t>(chart)], u, v);
            return Vec3<Jet1d>{{s.normal.x, s.normal_du.x, s.normal_dv.x},
                               {s.normal.y, s.normal_du.y, s.normal_dv.y},
                               {s.normal.z, s.normal_du.z, s.normal_dv.z}};
        });
    };
    return curve;
}

ProjectionCurve rotated_sphere_curve(double angle_max, int samples) {
    ProjectionCurve curve;
    curve.t_min = 0.0;
    curve.t_max = angle_max;
    curve.ts = linspace(0.0, angle_max, samples);
    auto base = std::make_shared<const ParamSurface>(make_sphere());
    curve.at = [base](double t) {
        return projection_from_vector(base, [base, t](int chart, double u, double v) {
            GaussMapSample s = gauss_map(base->charts[static_cast<std::size_t>(chart)], u, v);
            Jet1d f{s.normal.x, s.normal_du.x, s.normal_dv.x};
            Jet1d g{s.normal.y, s.normal_du.y, s.normal_dv.y};
            Jet1d h{s.normal.z, s.normal_du.z, s.normal_dv.z};
            double c = std::cos(t), sn = std::sin(t);
            return Vec3<Jet1d>{c * f - sn * g, sn * f + c * g, h};
        });
    };
    return curve;
}

ProjectionCurve constant_curve(std::shared_ptr<const ParamSurface> s, int samples) {
    ProjectionCurve curve;
    curve.t_min = 0.0;
    curve.t_max = 1.0;
    curve.ts = linspace(0.0, 1.0, samples);
    Mat2Field E = bott_projection(std::move(s));
    curve.at = [E](double) { return E; };
    return curve;
}

ProjectionCurve corrupted_curve(double t_max, int samples) {
    ProjectionCurve curve;
    curve.t_min = 0.0;
    curve.t_max = t_max;
    curve.ts = linspace(0.0, t_max, samples);
    auto base = std::make_shared<const ParamSurface>(make_sphere());
    curve.at = [base](double t) {
        return projection_from_vector(base, [base, t](int chart, double u, double v) {
            GaussMapSample s = gauss_map(base->charts[static_cast<std::size_t>(chart)], u, v);
            Jet1d f{s.normal.x, s.normal_du.x, s.normal_dv.x};
            Jet1d g{s.normal.y, s.normal_du.y, s.normal_dv.y};
            Jet1d h{s.normal.z, s.normal_du.z, s.normal_dv.z};
            return Vec3<Jet1d>{(1.0 + t) * f, g, h};
        });
    };
    return curve;
}

StabilityReport stability_check(const ProjectionCurve& curve, int n, double tolerance) {
    StabilityReport rep;
    rep.ts = curve.ts;
    rep.tolerance = tolerance;
    for (double t : curve.ts) {
        Mat2Field E = curve.at(t);
        rep.series.push_back(tau_mat2(E, E, E, n));
    }
    for (const cplx& v : rep.series)
        rep.max_deviation = std::max(rep.max_deviation, std::abs(v - rep.series.front()));
    rep.pass = rep.max_deviation < tolerance;
    return rep;
}

CommutatorReport commutator_structure_check(const ProjectionCurve& curve, double t0, int n,
                                            double tolerance) {
    const double dt = curve.dt_stencil;
    if (t0 - dt < curve.t_min || t0 + dt > curve.t_max)
        throw config_error("difference stencil leaves the curve parameter range");

    Mat2Field E = curve.at(t0);
    Mat2Field Ep = curve.at(t0 + dt);
    Mat2Field Em = curve.at(t0 - dt);
    Mat2Field Edot = cplx(1.0 / (2.0 * dt)) * (Ep - Em);

    Mat2Field idem = Edot - (Edot * E + E * Edot);
    Mat2Field inner = Edot * E - E * Edot;
    Mat2Field comm = Edot - (inner * E - E * inner);

    CommutatorReport rep;
    rep.t0 = t0;
    rep.dt = dt;
    rep.tolerance = tolerance;
    rep.idempotency_residual = sup_norm(idem, n);
    rep.commutator_residual = sup_norm(comm, n);
    rep.pass = rep.idempotency_residual < tolerance && rep.commutator_residual < tolerance;
    return rep;
}

} // namespace symlab
