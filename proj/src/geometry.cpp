#include "symlab/geometry.hpp"

#include <cmath>
#include <numbers>

#include "symlab/errors.hpp"

namespace symlab {

namespace {

constexpr double pi = std::numbers::pi;

Vec3<Jet2d> unit_sphere_point(const Jet2d& theta, const Jet2d& phi) {
    Jet2d st = sin(theta), ct = cos(theta);
    Jet2d sp = sin(phi), cp = cos(phi);
    return {st * cp, st * sp, ct};
}

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const double xm = 0.5 * (b + a);
    const double xl = 0.5 * (b - a);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 0; k < n; ++k) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
            }
            dp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = xm - xl * x;
        nodes[n - 1 - i] = xm + xl * x;
        weights[i] = 2.0 * xl / ((1.0 - x * x) * dp * dp);
        weights[n - 1 - i] = weights[i];
    }
}

double det3(const Vec3<double>& a, const Vec3<double>& b, const Vec3<double>& c) {
    return a.x * (b.y * c.z - b.z * c.y) - a.y * (b.x * c.z - b.z * c.x) +
           a.z * (b.x * c.y - b.y * c.x);
}

// Component jets of the Gauss map at one node, picked by ordering.
struct ComponentJets {
    Jet1d f, g, h;
};

ComponentJets ordered_components(const GaussMapSample& s, StokesOrdering o) {
    Jet1d f{s.normal.x, s.normal_du.x, s.normal_dv.x};
    Jet1d g{s.normal.y, s.normal_du.y, s.normal_dv.y};
    Jet1d h{s.normal.z, s.normal_du.z, s.normal_dv.z};
    switch (o) {
        case StokesOrdering::fgh: return {f, g, h};
        case StokesOrdering::ghf: return {g, h, f};
        default: return {h, f, g};
    }
}

template <class NodeFn>
double integrate_over_surface(const ParamSurface& s, int n, NodeFn&& integrand) {
    double total = 0.0;
    for (const Chart& chart : s.charts) {
        QuadratureRule q = make_quadrature(chart, n);
        std::vector<double> terms;
        terms.reserve(q.u_nodes.size() * q.v_nodes.size());
        for (std::size_t i = 0; i < q.u_nodes.size(); ++i)
            for (std::size_t j = 0; j < q.v_nodes.size(); ++j)
                terms.push_back(q.u_weights[i] * q.v_weights[j] *
                                integrand(chart, q.u_nodes[i], q.v_nodes[j]));
        total += pairwise_sum(terms);
    }
    return total;
}

} // namespace

double pairwise_sum(std::vector<double>& terms) {
    if (terms.empty()) return 0.0;
    std::size_t n = terms.size();
    while (n > 1) {
        std::size_t half = (n + 1) / 2;
        for (std::size_t i = 0; i + half < n; ++i) terms[i] += terms[i + half];
        n = half;
    }
    return terms[0];
}

ParamSurface make_sphere() {
    ParamSurface s;
    s.name = "sphere";
    s.euler_characteristic = 2;
    Chart c;
    c.u0 = 0;
    c.u1 = pi;
    c.v0 = 0;
    c.v1 = 2 * pi;
    c.periodic_v = true;
    c.map = [](const Jet2d& th, const Jet2d& ph) { return unit_sphere_point(th, ph); };
    s.charts.push_back(std::move(c));
    return s;
}

ParamSurface make_torus(double big_radius, double small_radius) {
    if (!(big_radius > small_radius && small_radius > 0))
        throw config_error("torus requires R > rho > 0");
    ParamSurface s;
    s.name = "torus";
    s.euler_characteristic = 0;
    Chart c;
    c.u0 = 0;
    c.u1 = 2 * pi;
    c.v0 = 0;
    c.v1 = 2 * pi;
    c.periodic_u = true;
    c.periodic_v = true;
    double R = big_radius, r = small_radius;
    c.map = [R, r](const Jet2d& u, const Jet2d& v) -> Vec3<Jet2d> {
        Jet2d ring = Jet2d::constant(R) + r * cos(v);
        return {ring * cos(u), ring * sin(u), r * sin(v)};
    };
    s.charts.push_back(std::move(c));
    return s;
}

ParamSurface make_ellipsoid(double a, double b, double c) {
    if (!(a > 0 && b > 0 && c > 0)) throw config_error("ellipsoid requires positive semi-axes");
    ParamSurface s;
    s.name = "ellipsoid";
    s.euler_characteristic = 2;
    Chart ch;
    ch.u0 = 0;
    ch.u1 = pi;
    ch.v0 = 0;
    ch.v1 = 2 * pi;
    ch.periodic_v = true;
    ch.map = [a, b, c](const Jet2d& th, const Jet2d& ph) -> Vec3<Jet2d> {
        Vec3<Jet2d> p = unit_sphere_point(th, ph);
        return {a * p.x, b * p.y, c * p.z};
    };
    s.charts.push_back(std::move(ch));
    return s;
}

ParamSurface make_bumped_sphere(double t, int k) {
    if (k < 1) throw config_error("bump frequency k must be a positive integer");
    if (!(std::abs(t) <= 0.9))
        throw config_error("bump amplitude |t| <= 0.9 required for a regular surface");
    ParamSurface s;
    s.name = "bumped_sphere";
    s.euler_characteristic = 2;
    Chart c;
    c.u0 = 0;
    c.u1 = pi;
    c.v0 = 0;
    c.v1 = 2 * pi;
    c.periodic_v = true;
    double kk = k;
    c.map = [t, kk](const Jet2d& th, const Jet2d& ph) -> Vec3<Jet2d> {
        Jet2d radius = Jet2d::constant(1.0) + t * cos(kk * th);
        Vec3<Jet2d> p = unit_sphere_point(th, ph);
        return {radius * p.x, radius * p.y, radius * p.z};
    };
    s.charts.push_back(std::move(c));
    return s;
}

ParamSurface builtin_surface(const std::string& spec) {
    std::string name = spec;
    std::vector<double> params;
    auto open = spec.find('(');
    if (open != std::string::npos) {
        if (spec.back() != ')') throw config_error("malformed surface spec '" + spec + "'");
        name = spec.substr(0, open);
        std::string inner = spec.substr(open + 1, spec.size() - open - 2);
        std::size_t start = 0;
        while (start <= inner.size()) {
            std::size_t comma = inner.find(',', start);
            std::string tok = inner.substr(start, comma == std::string::npos ? std::string::npos
                                                                             : comma - start);
            try {
                std::size_t used = 0;
                params.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw config_error("bad surface parameter '" + tok + "' in '" + spec + "'");
            }
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    auto expect = [&](std::size_t n) {
        if (params.size() != n)
            throw config_error("surface '" + name + "' expects " + std::to_string(n) +
                               " parameters, got " + std::to_string(params.size()));
    };
    if (name == "sphere") {
        expect(0);
        return make_sphere();
    }
    if (name == "torus") {
        expect(2);
        return make_torus(params[0], params[1]);
    }
    if (name == "ellipsoid") {
        expect(3);
        return make_ellipsoid(params[0], params[1], params[2]);
    }
    if (name == "bumped_sphere") {
        expect(2);
        double kd = params[1];
        if (kd != std::floor(kd)) throw config_error("bump frequency must be an integer");
        return make_bumped_sphere(params[0], static_cast<int>(kd));
    }
    throw config_error("unknown surface '" + name + "'");
}

QuadratureRule make_quadrature(const Chart& chart, int n) {
    if (n < 4) throw config_error("quadrature resolution must be at least 4");
    QuadratureRule q;
    q.resolution = n;
    auto fill = [&](double a, double b, bool periodic, std::vector<double>& nodes,
                    std::vector<double>& weights) {
        if (periodic) {
            // Midpoint offset keeps nodes off chart seams and degenerate
            // edges while retaining trapezoid accuracy on periodic data.
            nodes.resize(n);
            weights.assign(n, (b - a) / n);
            for (int j = 0; j < n; ++j) nodes[j] = a + (j + 0.5) * (b - a) / n;
        } else {
            gauss_legendre(n, a, b, nodes, weights);
        }
    };
    fill(chart.u0, chart.u1, chart.periodic_u, q.u_nodes, q.u_weights);
    fill(chart.v0, chart.v1, chart.periodic_v, q.v_nodes, q.v_weights);
    return q;
}

GaussMapSample gauss_map(const Chart& chart, double u, double v) {
    Vec3<Jet2d> r = chart.map(Jet2d::seed_u(u), Jet2d::seed_v(v));
    Vec3<Jet1d> ru{{r.x.du, r.x.duu, r.x.duv}, {r.y.du, r.y.duu, r.y.duv}, {r.z.du, r.z.duu, r.z.duv}};
    Vec3<Jet1d> rv{{r.x.dv, r.x.duv, r.x.dvv}, {r.y.dv, r.y.duv, r.y.dvv}, {r.z.dv, r.z.duv, r.z.dvv}};
    Vec3<Jet1d> w = cross(ru, rv);
    Jet1d len2 = dot(w, w);
    if (!(len2.v > 1e-28))
        throw degenerate_node_error("degenerate parametrization node: |r_u x r_v| < 1e-14");
    Jet1d len = sqrt(len2);
    Vec3<Jet1d> nrm{w.x / len, w.y / len, w.z / len};
    GaussMapSample out;
    out.position = {r.x.v, r.y.v, r.z.v};
    out.normal = {nrm.x.v, nrm.y.v, nrm.z.v};
    out.normal_du = {nrm.x.du, nrm.y.du, nrm.z.du};
    out.normal_dv = {nrm.x.dv, nrm.y.dv, nrm.z.dv};
    return out;
}

Vec3<Jet1d> chart_point(const Chart& chart, double u, double v) {
    Vec3<Jet2d> r = chart.map(Jet2d::seed_u(u), Jet2d::seed_v(v));
    return {{r.x.v, r.x.du, r.x.dv}, {r.y.v, r.y.du, r.y.dv}, {r.z.v, r.z.du, r.z.dv}};
}

double integrate_curvature(const ParamSurface& s, int n) {
    return integrate_over_surface(s, n, [](const Chart& chart, double u, double v) {
        GaussMapSample g = gauss_map(chart, u, v);
        return det3(g.normal, g.normal_du, g.normal_dv);
    });
}

double integrate_fdgdh(const ParamSurface& s, StokesOrdering ordering, int n) {
    return integrate_over_surface(s, n, [ordering](const Chart& chart, double u, double v) {
        ComponentJets c = ordered_components(gauss_map(chart, u, v), ordering);
        return c.f.v * (c.g.du * c.h.dv - c.g.dv * c.h.du);
    });
}

GaussBonnetReport gauss_bonnet_check(const ParamSurface& s, int n) {
    GaussBonnetReport rep;
    rep.surface = s.name;
    rep.chi = s.euler_characteristic;
    rep.resolution = n;
    rep.integral = integrate_curvature(s, n);
    rep.expected = 2.0 * pi * s.euler_characteristic;
    rep.residual = std::abs(rep.integral - rep.expected);
    return rep;
}

} // namespace symlab
