#pragma once

#include <array>
#include <string>
#include <vector>

#include "symlab/corank.hpp"
#include "symlab/poly.hpp"

namespace symlab {

/// Planar polynomial vector field rendered to double-precision evaluators,
/// with the four Jacobian entry polynomials compiled alongside.
class FlowField {
  public:
    static FlowField from_polys(const GaussianPoly2& P, const GaussianPoly2& Q);

    const GaussianPoly2& P() const { return p_; }
    const GaussianPoly2& Q() const { return q_; }

    std::array<double, 2> eval(double x, double y) const;
    /// Row-major [dP/dx, dP/dy, dQ/dx, dQ/dy].
    std::array<double, 4> jacobian(double x, double y) const;

  private:
    struct CompiledTerm {
        int a, b;
        double c;
    };
    using Compiled = std::vector<CompiledTerm>;

    static Compiled compile(const GaussianPoly2& p);
    static double eval_terms(const Compiled& t, double x, double y);

    GaussianPoly2 p_, q_;
    Compiled pc_, qc_, pxc_, pyc_, qxc_, qyc_;
};

struct Trajectory {
    std::vector<double> t;
    std::vector<std::array<double, 2>> y;
};

/// Adaptive Dormand-Prince 5(4) integration from `start` to t_max with
/// local error per step at most tol (tol in [1e-12, 1e-4]). Throws
/// divergence_error when the state norm passes 1e8.
Trajectory integrate_orbit(const FlowField& f, std::array<double, 2> start, double t_max,
                           double tol);

struct ReturnResult {
    double radius = 0;
    double time = 0;
};

/// First same-direction return to the ray at angle theta, starting from
/// radius r on that ray. Throws no_return_error when the start is not
/// transversal or no crossing happens within t_max.
ReturnResult return_map(const FlowField& f, double theta, double r, double tol,
                        double t_max = 400.0);

enum class CycleStability { stable, unstable, semi_stable, continuum };

const char* to_string(CycleStability s);

struct LimitCycleRecord {
    double radius = 0;
    double period = 0;
    CycleStability stability = CycleStability::stable;
    double residual = 0; ///< |return(r) - r| at the reported radius
};

struct CycleScanSample {
    double r = 0;
    double delta = 0; ///< return(r) - r
    double time = 0;
    bool valid = false;
    std::string error;
};

struct CycleScanResult {
    std::vector<LimitCycleRecord> cycles; ///< isolated cycles, sorted by radius
    bool continuum_flag = false;
    std::vector<LimitCycleRecord> continuum_bands;
    std::vector<CycleScanSample> samples;
    int sample_errors = 0;
    double section_angle = 0; ///< after any automatic rotation
};

/// Scans return(r) - r over [r_min, r_max], refines bracketed sign changes
/// by bisection, and classifies each fixed point from the bracket signs.
/// A sub-interval where the displacement vanishes within tolerance is
/// reported once as a continuum band, not as isolated cycles. Samples whose
/// integration fails are recorded and skipped. When the section at `theta`
/// fails its transversality probes, it is rotated by increments of pi/12.
CycleScanResult find_limit_cycles(const FlowField& f, double r_min, double r_max, int samples,
                                  double tol, double theta = 0.0);

struct BoundCompareReport {
    int isolated_cycles = 0;
    bool continuum = false;
    CorankLadder ladder;
    std::string verdict; ///< CONSISTENT | INCONCLUSIVE | VIOLATION
    std::string explanation;
    CycleScanResult scan;
};

/// Joint report: detected cycle count next to the truncated corank ladder
/// of P dx + Q dy. VIOLATION is only ever declared against an exact
/// (monomial-eigenbasis) corank; stabilized ladder values are heuristic
/// lower-bound evidence computed on the polynomial ring.
BoundCompareReport bound_compare(const GaussianPoly2& P, const GaussianPoly2& Q, double r_min,
                                 double r_max, int samples, double tol, int m_max, int d_max);

} // namespace symlab
