#pragma once

#include <array>
#include <complex>
#include <memory>
#include <random>
#include <vector>

#include "symlab/geometry.hpp"

namespace symlab {

using cplx = std::complex<double>;
using CJet = Jet1<cplx>;

/// Smooth complex-valued function on a surface, evaluated per chart with
/// first partials carried along. Combinators keep the partials consistent
/// through the product rule, so no finite differences appear anywhere.
class SurfaceFunction {
  public:
    using Evaluator = std::function<CJet(int chart, double u, double v)>;

    SurfaceFunction() = default;
    SurfaceFunction(std::shared_ptr<const ParamSurface> surface, Evaluator eval)
        : surface_(std::move(surface)), eval_(std::move(eval)) {}

    const std::shared_ptr<const ParamSurface>& surface() const { return surface_; }
    CJet operator()(int chart, double u, double v) const { return eval_(chart, u, v); }

    static SurfaceFunction constant(std::shared_ptr<const ParamSurface> s, cplx c);

    /// Component axis of the Gauss normal map: 0 -> f, 1 -> g, 2 -> h.
    static SurfaceFunction gauss_component(std::shared_ptr<const ParamSurface> s, int axis);

    /// Pullback of a function of the ambient position.
    static SurfaceFunction ambient(std::shared_ptr<const ParamSurface> s,
                                   std::function<CJet(const Vec3<Jet1d>&)> fn);

    SurfaceFunction conjugated() const;

    friend SurfaceFunction operator+(const SurfaceFunction& a, const SurfaceFunction& b);
    friend SurfaceFunction operator-(const SurfaceFunction& a, const SurfaceFunction& b);
    friend SurfaceFunction operator*(const SurfaceFunction& a, const SurfaceFunction& b);
    friend SurfaceFunction operator*(cplx s, const SurfaceFunction& a);

  private:
    std::shared_ptr<const ParamSurface> surface_;
    Evaluator eval_;
};

/// Random real trig polynomial: chart Fourier modes on fully periodic
/// surfaces, otherwise a degree-2 ambient polynomial pulled back (which is
/// again a trig polynomial in the chart variables and smooth on the
/// surface, poles included).
SurfaceFunction random_trig_function(std::shared_ptr<const ParamSurface> s, std::mt19937& rng);

/// 2x2 matrix of surface functions over a common surface.
class Mat2Field {
  public:
    Mat2Field() = default;
    Mat2Field(std::shared_ptr<const ParamSurface> surface, std::array<SurfaceFunction, 4> entries)
        : surface_(std::move(surface)), e_(std::move(entries)) {}

    static Mat2Field identity(std::shared_ptr<const ParamSurface> s);

    const std::shared_ptr<const ParamSurface>& surface() const { return surface_; }
    const SurfaceFunction& at(int i, int j) const { return e_[static_cast<std::size_t>(2 * i + j)]; }

    /// Entrywise conjugate transpose.
    Mat2Field adjoint() const;

    friend Mat2Field operator+(const Mat2Field& a, const Mat2Field& b);
    friend Mat2Field operator-(const Mat2Field& a, const Mat2Field& b);
    friend Mat2Field operator*(const Mat2Field& a, const Mat2Field& b);
    friend Mat2Field operator*(cplx s, const Mat2Field& a);

  private:
    std::shared_ptr<const ParamSurface> surface_;
    std::array<SurfaceFunction, 4> e_;
};

/// Trilinear functional: quadrature of f0 (df1 df2) over the surface,
/// i.e. f0 (d1f1 d2f2 - d2f1 d1f2) in chart coordinates.
cplx tau(const SurfaceFunction& f0, const SurfaceFunction& f1, const SurfaceFunction& f2, int n);

/// |tau(f0,f1,f2) - tau(f1,f2,f0)|.
double cyclic_defect(const SurfaceFunction& f0, const SurfaceFunction& f1,
                     const SurfaceFunction& f2, int n);

/// |tau(f0 f1, f2, f3) - tau(f0, f1 f2, f3) + tau(f0, f1, f2 f3) - tau(f3 f0, f1, f2)|.
double hochschild_defect(const SurfaceFunction& f0, const SurfaceFunction& f1,
                         const SurfaceFunction& f2, const SurfaceFunction& f3, int n);

/// Matrix extension: sum over index chains of tau(A_ij, B_jk, C_ki); the
/// trace of the elementary-matrix products keeps exactly the cyclic chains.
cplx tau_mat2(const Mat2Field& A, const Mat2Field& B, const Mat2Field& C, int n);

/// E = 1/2 [[1+h, f+ig], [f-ig, 1-h]] built from the Gauss components,
/// a projection wherever f^2+g^2+h^2 = 1.
Mat2Field bott_projection(std::shared_ptr<const ParamSurface> s);

/// The same matrix with 1-h in both diagonal slots. Not a projection; kept
/// as a negative control. Its defect reaches |h| sqrt(1-h^2) / 2 <= 1/4 on
/// a sphere-like surface.
Mat2Field bott_projection_uncorrected(std::shared_ptr<const ParamSurface> s);

/// Max over quadrature nodes of max(|E^2-E|, |E-E*|), entrywise moduli.
double projection_defect(const Mat2Field& E, int n);

/// Max over quadrature nodes of the entrywise modulus of M.
double sup_norm(const Mat2Field& M, int n);

/// tau_mat2(E,E,E) / integral(f dg dh) on a sphere-like surface. Throws
/// numeric_error when the denominator is below 1e-9.
cplx lambda_estimate(const ParamSurface& s, int n);

/// Differentiable family of matrix fields over a fixed parameter domain.
/// All samples share the base surface; t-dependence lives inside the
/// entry evaluators.
struct ProjectionCurve {
    double t_min = 0;
    double t_max = 0;
    std::vector<double> ts;
    std::function<Mat2Field(double)> at;
    double dt_stencil = 1e-3;
};

/// Pulled-back Gauss-map projections of the bumped-sphere family.
ProjectionCurve bumped_sphere_curve(double t_max, int samples, int k);

/// Projections of the sphere Gauss map composed with a rotation about the
/// z axis by angle t.
ProjectionCurve rotated_sphere_curve(double angle_max, int samples);

ProjectionCurve constant_curve(std::shared_ptr<const ParamSurface> s, int samples);

/// Negative control: the f entry is scaled by (1+t) without renormalizing,
/// so E(t) stops being a projection for t > 0.
ProjectionCurve corrupted_curve(double t_max, int samples);

struct StabilityReport {
    std::vector<double> ts;
    std::vector<cplx> series; ///< tau_mat2(E(t),E(t),E(t)) per sample
    double max_deviation = 0;
    double tolerance = 0;
    bool pass = false;
};

StabilityReport stability_check(const ProjectionCurve& curve, int n, double tolerance = 1e-6);

struct CommutatorReport {
    double t0 = 0;
    double dt = 0;
    /// |Edot - (Edot E + E Edot)| with Edot by central differences.
    double idempotency_residual = 0;
    /// |Edot - [[Edot,E],E]|.
    double commutator_residual = 0;
    double tolerance = 0;
    bool pass = false;
};

CommutatorReport commutator_structure_check(const ProjectionCurve& curve, double t0, int n,
                                            double tolerance = 1e-4);

} // namespace symlab
