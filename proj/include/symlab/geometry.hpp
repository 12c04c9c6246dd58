#pragma once

#include <functional>
#include <string>
#include <vector>

#include "symlab/jet.hpp"

namespace symlab {

using Jet1d = Jet1<double>;
using Jet2d = Jet2<double>;

/// One parameter rectangle with a point map carrying first and second
/// partials by dual-number propagation. Periodic directions get equispaced
/// midpoint-offset trapezoid nodes, the rest Gauss-Legendre.
struct Chart {
    double u0 = 0, u1 = 1, v0 = 0, v1 = 1;
    bool periodic_u = false;
    bool periodic_v = false;
    std::function<Vec3<Jet2d>(const Jet2d&, const Jet2d&)> map;
};

/// Chart-based parametrized surface with a declared Euler characteristic.
/// Charts must cover the surface up to measure zero without double
/// counting, and the parametrization must be regular on node interiors.
struct ParamSurface {
    std::string name;
    int euler_characteristic = 0;
    std::vector<Chart> charts;
};

ParamSurface make_sphere();
ParamSurface make_torus(double big_radius, double small_radius);
ParamSurface make_ellipsoid(double a, double b, double c);

/// Radially bumped sphere: radius 1 + t cos(k theta). Regular for
/// |t| <= 0.9 (any k >= 1); t = 0 reproduces the sphere point map exactly.
ParamSurface make_bumped_sphere(double t, int k);

/// Parses "sphere", "torus(2,1)", "ellipsoid(1,1,2)", "bumped_sphere(0.1,1)".
ParamSurface builtin_surface(const std::string& spec);

/// Per-direction nodes and weights on one chart. Weights are positive and
/// sum to the side length per direction.
struct QuadratureRule {
    int resolution = 0;
    std::vector<double> u_nodes, u_weights;
    std::vector<double> v_nodes, v_weights;
};

QuadratureRule make_quadrature(const Chart& chart, int n);

/// Unit normal and its chart partials at one parameter point.
struct GaussMapSample {
    Vec3<double> position;
    Vec3<double> normal;
    Vec3<double> normal_du;
    Vec3<double> normal_dv;
};

/// N = (r_u x r_v) / |r_u x r_v| with partials propagated through the
/// normalization. Throws degenerate_node_error when |r_u x r_v| < 1e-14.
GaussMapSample gauss_map(const Chart& chart, double u, double v);

/// Position with first partials, for functions pulled back from R^3.
Vec3<Jet1d> chart_point(const Chart& chart, double u, double v);

/// Sum over charts of the quadrature of det[N, N_u, N_v] du dv.
double integrate_curvature(const ParamSurface& s, int n);

enum class StokesOrdering { fgh, ghf, hfg };

/// Quadrature of first d(second) d(third) for a cyclic ordering of the
/// Gauss map components (f, g, h).
double integrate_fdgdh(const ParamSurface& s, StokesOrdering ordering, int n);

struct GaussBonnetReport {
    std::string surface;
    int chi = 0;
    int resolution = 0;
    double integral = 0;
    double expected = 0; ///< 2 pi chi
    double residual = 0;
    /// The implemented convention; the curvature integral equals
    /// 2*pi*chi(S), not chi(S) alone.
    std::string normalization = "integral(K dS) = 2*pi*chi";
};

GaussBonnetReport gauss_bonnet_check(const ParamSurface& s, int n);

/// Fixed-order pairwise reduction; deterministic for a fixed input order.
double pairwise_sum(std::vector<double>& terms);

} // namespace symlab
