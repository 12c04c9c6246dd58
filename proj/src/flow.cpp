#include "symlab/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "symlab/errors.hpp"

namespace symlab {

namespace {

constexpr double kBlowUpGuard = 1e8;

using State = std::array<double, 2>;

double norm_inf(const State& y) { return std::max(std::abs(y[0]), std::abs(y[1])); }

// Dormand-Prince 5(4) tableau. The last stage row doubles as the 5th-order
// weights (FSAL).
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Stepper {
    const FlowField& f;
    double tol;
    State y;
    double t = 0;
    double h = 0;
    State k1; // FSAL stage

    Stepper(const FlowField& field, State start, double tolerance) : f(field), tol(tolerance) {
        y = start;
        k1 = f.eval(y[0], y[1]);
        // Jacobian sets the initial step scale; the controller refines it.
        auto j = f.jacobian(y[0], y[1]);
        double jn = std::max({std::abs(j[0]), std::abs(j[1]), std::abs(j[2]), std::abs(j[3])});
        h = std::min(0.1, 0.5 / (1.0 + jn));
    }

    // One accepted step; returns the step actually taken. Stores the end
    // slope in k1 for the next step.
    struct Accepted {
        double t0, h;
        State y0, y1;
        State f0, f1;
    };

    Accepted step(double t_end) {
        for (int attempt = 0; attempt < 200; ++attempt) {
            double hh = std::min(h, t_end - t);
            State k2, k3, k4, k5, k6, k7, yt;

            auto at = [&](double c1, double c2, double c3, double c4, double c5, double c6,
                          const State& kk2, const State& kk3, const State& kk4, const State& kk5,
                          const State& kk6) -> State {
                State out;
                for (int i = 0; i < 2; ++i)
                    out[i] = y[i] + hh * (c1 * k1[i] + c2 * kk2[i] + c3 * kk3[i] + c4 * kk4[i] +
                                          c5 * kk5[i] + c6 * kk6[i]);
                return out;
            };

            State z = at(a21, 0, 0, 0, 0, 0, k1, k1, k1, k1, k1);
            k2 = f.eval(z[0], z[1]);
            z = at(a31, a32, 0, 0, 0, 0, k2, k2, k2, k2, k2);
            k3 = f.eval(z[0], z[1]);
            z = at(a41, a42, a43, 0, 0, 0, k2, k3, k3, k3, k3);
            k4 = f.eval(z[0], z[1]);
            z = at(a51, a52, a53, a54, 0, 0, k2, k3, k4, k4, k4);
            k5 = f.eval(z[0], z[1]);
            z = at(a61, a62, a63, a64, a65, 0, k2, k3, k4, k5, k5);
            k6 = f.eval(z[0], z[1]);
            yt = at(a71, 0, a73, a74, a75, a76, k2, k3, k4, k5, k6);
            k7 = f.eval(yt[0], yt[1]);

            double err = 0;
            for (int i = 0; i < 2; ++i) {
                double e = hh * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                 e7 * k7[i]);
                double sc = tol + tol * std::max(std::abs(y[i]), std::abs(yt[i]));
                err += (e / sc) * (e / sc);
            }
            err = std::sqrt(err / 2.0);

            double factor = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            if (err <= 1.0) {
                Accepted acc{t, hh, y, yt, k1, k7};
                t += hh;
                y = yt;
                k1 = k7;
                h = hh * std::min(5.0, std::max(0.2, factor));
                if (norm_inf(y) > kBlowUpGuard)
                    throw divergence_error("trajectory norm exceeded 1e8");
                return acc;
            }
            h = hh * std::max(0.1, factor);
            if (h < 1e-14)
                throw numeric_error("step size underflow in the adaptive integrator");
        }
        throw numeric_error("too many step rejections");
    }
};

// Cubic Hermite evaluation inside an accepted step, for event bracketing.
State hermite(const Stepper::Accepted& s, double theta) {
    State out;
    for (int i = 0; i < 2; ++i) {
        double d = s.y1[i] - s.y0[i];
        double c2 = 3.0 * d - s.h * (2.0 * s.f0[i] + s.f1[i]);
        double c3 = -2.0 * d + s.h * (s.f0[i] + s.f1[i]);
        out[i] = s.y0[i] + s.h * theta * s.f0[i] + theta * theta * c2 + theta * theta * theta * c3;
    }
    return out;
}

} // namespace

FlowField::Compiled FlowField::compile(const GaussianPoly2& p) {
    Compiled out;
    for (const auto& [m, c] : p.terms()) out.push_back({m.a, m.b, c.re.get_d()});
    return out;
}

double FlowField::eval_terms(const Compiled& terms, double x, double y) {
    double acc = 0;
    for (const CompiledTerm& t : terms) {
        double v = t.c;
        for (int i = 0; i < t.a; ++i) v *= x;
        for (int i = 0; i < t.b; ++i) v *= y;
        acc += v;
    }
    return acc;
}

FlowField FlowField::from_polys(const GaussianPoly2& P, const GaussianPoly2& Q) {
    if (!P.is_real() || !Q.is_real())
        throw config_error("flow fields require real-coefficient polynomials");
    FlowField f;
    f.p_ = P;
    f.q_ = Q;
    f.pc_ = compile(P);
    f.qc_ = compile(Q);
    f.pxc_ = compile(P.partial(GaussianPoly2::Var::x));
    f.pyc_ = compile(P.partial(GaussianPoly2::Var::y));
    f.qxc_ = compile(Q.partial(GaussianPoly2::Var::x));
    f.qyc_ = compile(Q.partial(GaussianPoly2::Var::y));
    return f;
}

std::array<double, 2> FlowField::eval(double x, double y) const {
    return {eval_terms(pc_, x, y), eval_terms(qc_, x, y)};
}

std::array<double, 4> FlowField::jacobian(double x, double y) const {
    return {eval_terms(pxc_, x, y), eval_terms(pyc_, x, y), eval_terms(qxc_, x, y),
            eval_terms(qyc_, x, y)};
}

namespace {

void check_tol(double tol) {
    if (!(tol >= 1e-12 && tol <= 1e-4))
        throw config_error("integration tolerance must lie in [1e-12, 1e-4]");
}

} // namespace

Trajectory integrate_orbit(const FlowField& f, std::array<double, 2> start, double t_max,
                           double tol) {
    check_tol(tol);
    if (!(t_max > 0)) throw config_error("t_max must be positive");
    Trajectory traj;
    Stepper st(f, start, tol);
    traj.t.push_back(0);
    traj.y.push_back(start);
    while (st.t < t_max) {
        st.step(t_max);
        traj.t.push_back(st.t);
        traj.y.push_back(st.y);
    }
    return traj;
}

ReturnResult return_map(const FlowField& f, double theta, double r, double tol, double t_max) {
    check_tol(tol);
    if (!(r > 0)) throw config_error("section radius must be positive");

    const double cs = std::cos(theta), sn = std::sin(theta);
    auto section = [&](const State& y) { return -sn * y[0] + cs * y[1]; };
    auto ray_side = [&](const State& y) { return cs * y[0] + sn * y[1]; };

    State start{r * cs, r * sn};
    State v0 = f.eval(start[0], start[1]);
    double gdot0 = -sn * v0[0] + cs * v0[1];
    double speed = std::hypot(v0[0], v0[1]);
    if (std::abs(gdot0) < 1e-12 * (1.0 + speed))
        throw no_return_error("flow is not transversal to the section at the start radius");
    const double direction = gdot0 > 0 ? 1.0 : -1.0;

    Stepper st(f, start, tol);
    // Re-integrates from the step start to a trial time; accuracy stays at
    // integrator level instead of interpolation level.
    auto state_at = [&](const Stepper::Accepted& acc, double dt_local) -> State {
        if (dt_local <= 0) return acc.y0;
        Stepper sub(f, acc.y0, tol);
        while (sub.t < dt_local) sub.step(dt_local);
        return sub.y;
    };

    while (st.t < t_max) {
        Stepper::Accepted acc = st.step(t_max);
        // Bracket sign changes of the section coordinate on dense samples.
        const int dense = 8;
        double g_prev = section(acc.y0);
        double th_prev = 0;
        for (int i = 1; i <= dense; ++i) {
            double th = static_cast<double>(i) / dense;
            State yi = (i == dense) ? acc.y1 : hermite(acc, th);
            double gi = section(yi);
            if (g_prev * direction < 0 && gi * direction >= 0) {
                // Refine the crossing time inside [th_prev, th] by bisection
                // on re-integrated states.
                double lo = th_prev * acc.h, hi = th * acc.h;
                State y_hit = yi;
                for (int iter = 0; iter < 80; ++iter) {
                    double mid = 0.5 * (lo + hi);
                    State ym = state_at(acc, mid);
                    if (section(ym) * direction >= 0) {
                        hi = mid;
                        y_hit = ym;
                    } else {
                        lo = mid;
                    }
                    if (hi - lo < 1e-15 * std::max(1.0, acc.h)) break;
                }
                if (ray_side(y_hit) > 1e-9)
                    return {ray_side(y_hit), acc.t0 + hi};
            }
            g_prev = gi;
            th_prev = th;
        }
    }
    throw no_return_error("no same-direction section crossing within the time budget");
}

const char* to_string(CycleStability s) {
    switch (s) {
        case CycleStability::stable: return "stable";
        case CycleStability::unstable: return "unstable";
        case CycleStability::semi_stable: return "semi-stable";
        default: return "continuum";
    }
}

CycleScanResult find_limit_cycles(const FlowField& f, double r_min, double r_max, int samples,
                                  double tol, double theta) {
    check_tol(tol);
    if (!(r_min > 0 && r_max > r_min)) throw config_error("scan range must satisfy 0 < r_min < r_max");
    if (samples < 2) throw config_error("scan needs at least 2 samples");

    CycleScanResult out;

    // Probe transversality; rotate the section by pi/12 increments until a
    // probe radius passes, up to a half turn.
    const double increment = std::numbers::pi / 12.0;
    double angle = theta;
    bool section_ok = false;
    for (int attempt = 0; attempt < 12 && !section_ok; ++attempt) {
        angle = theta + attempt * increment;
        for (double rp : {r_min, 0.5 * (r_min + r_max), r_max}) {
            State p{rp * std::cos(angle), rp * std::sin(angle)};
            State v = f.eval(p[0], p[1]);
            double gdot = -std::sin(angle) * v[0] + std::cos(angle) * v[1];
            if (std::abs(gdot) > 1e-9 * (1.0 + std::hypot(v[0], v[1]))) {
                section_ok = true;
                break;
            }
        }
    }
    if (!section_ok) angle = theta;
    out.section_angle = angle;

    auto displacement = [&](double r) -> ReturnResult {
        ReturnResult ret = return_map(f, angle, r, tol);
        return {ret.radius - r, ret.time};
    };

    for (int i = 0; i < samples; ++i) {
        CycleScanSample s;
        s.r = r_min + (r_max - r_min) * i / (samples - 1);
        try {
            ReturnResult d = displacement(s.r);
            s.delta = d.radius;
            s.time = d.time;
            s.valid = true;
        } catch (const numeric_error& e) {
            s.error = e.what();
            ++out.sample_errors;
        }
        out.samples.push_back(std::move(s));
    }

    const double continuum_tol = std::max(100.0 * tol, 1e-7);

    // Continuum bands: runs of vanishing displacement.
    std::vector<bool> in_band(out.samples.size(), false);
    std::size_t i = 0;
    while (i < out.samples.size()) {
        if (!out.samples[i].valid || std::abs(out.samples[i].delta) > continuum_tol) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < out.samples.size() && out.samples[j + 1].valid &&
               std::abs(out.samples[j + 1].delta) <= continuum_tol)
            ++j;
        if (j - i + 1 >= 3) {
            for (std::size_t k = i; k <= j; ++k) in_band[k] = true;
            LimitCycleRecord band;
            std::size_t mid = (i + j) / 2;
            band.radius = out.samples[mid].r;
            band.period = out.samples[mid].time;
            band.stability = CycleStability::continuum;
            for (std::size_t k = i; k <= j; ++k)
                band.residual = std::max(band.residual, std::abs(out.samples[k].delta));
            out.continuum_bands.push_back(band);
            out.continuum_flag = true;
        }
        i = j + 1;
    }

    // Bracketed sign changes refined by bisection.
    for (std::size_t s0 = 0; s0 + 1 < out.samples.size(); ++s0) {
        const CycleScanSample& a = out.samples[s0];
        const CycleScanSample& b = out.samples[s0 + 1];
        if (!a.valid || !b.valid || in_band[s0] || in_band[s0 + 1]) continue;
        if (std::abs(a.delta) <= continuum_tol || std::abs(b.delta) <= continuum_tol) continue;
        if (a.delta * b.delta >= 0) continue;

        double lo = a.r, hi = b.r;
        double dlo = a.delta;
        double rmid = 0.5 * (lo + hi), dmid = 0, tmid = 0;
        for (int iter = 0; iter < 200; ++iter) {
            rmid = 0.5 * (lo + hi);
            ReturnResult d = displacement(rmid);
            dmid = d.radius;
            tmid = d.time;
            if (std::abs(dmid) < 1e-9 || hi - lo < 1e-13) break;
            if (dlo * dmid <= 0) {
                hi = rmid;
            } else {
                lo = rmid;
                dlo = dmid;
            }
        }

        LimitCycleRecord rec;
        rec.radius = rmid;
        rec.period = tmid;
        rec.residual = std::abs(dmid);
        rec.stability = a.delta > 0 ? CycleStability::stable : CycleStability::unstable;
        // Tangential fixed point: displacement derivative below threshold.
        double hstep = std::max(1e-4 * (b.r - a.r), 1e-6);
        try {
            double dplus = displacement(rmid + hstep).radius;
            double dminus = displacement(rmid - hstep).radius;
            if (std::abs((dplus - dminus) / (2 * hstep)) < 1e-6)
                rec.stability = CycleStability::semi_stable;
        } catch (const numeric_error&) {
            // keep the bracket classification
        }

        // Merge radii closer than 1e-4.
        if (!out.cycles.empty() && std::abs(out.cycles.back().radius - rec.radius) < 1e-4) continue;
        out.cycles.push_back(rec);
    }

    // A sample may land on a fixed point directly: |delta| below the
    // continuum tolerance without a band around it. Classify it from the
    // neighbor signs so the cycle is not lost to the bracket filter.
    for (std::size_t s0 = 1; s0 + 1 < out.samples.size(); ++s0) {
        const CycleScanSample& prev = out.samples[s0 - 1];
        const CycleScanSample& mid = out.samples[s0];
        const CycleScanSample& next = out.samples[s0 + 1];
        if (!prev.valid || !mid.valid || !next.valid || in_band[s0]) continue;
        if (std::abs(mid.delta) > continuum_tol) continue;
        if (std::abs(prev.delta) <= continuum_tol || std::abs(next.delta) <= continuum_tol) continue;
        if (prev.delta * next.delta >= 0) continue;
        LimitCycleRecord rec;
        rec.radius = mid.r;
        rec.period = mid.time;
        rec.residual = std::abs(mid.delta);
        rec.stability = prev.delta > 0 ? CycleStability::stable : CycleStability::unstable;
        bool duplicate = false;
        for (const LimitCycleRecord& c : out.cycles)
            if (std::abs(c.radius - rec.radius) < 1e-4) duplicate = true;
        if (!duplicate) out.cycles.push_back(rec);
    }
    std::sort(out.cycles.begin(), out.cycles.end(),
              [](const LimitCycleRecord& a, const LimitCycleRecord& b) { return a.radius < b.radius; });

    return out;
}

BoundCompareReport bound_compare(const GaussianPoly2& P, const GaussianPoly2& Q, double r_min,
                                 double r_max, int samples, double tol, int m_max, int d_max) {
    BoundCompareReport rep;
    FlowField f = FlowField::from_polys(P, Q);
    rep.scan = find_limit_cycles(f, r_min, r_max, samples, tol);
    rep.isolated_cycles = static_cast<int>(rep.scan.cycles.size());
    rep.continuum = rep.scan.continuum_flag;
    rep.ladder = corank_ladder(weyl_from_field(P, Q), m_max, d_max);

    const CorankLadder& L = rep.ladder;
    bool exact = L.monomial_eigenbasis;
    bool has_value = false;
    int value = -1;
    if (L.verdict.rfind("corank = ", 0) == 0) {
        has_value = true;
        value = std::stoi(L.verdict.substr(9));
    }

    std::string basis_note = exact ? "corank is exact (monomial eigenbasis)"
                                   : "stabilized ladder values are heuristic lower-bound "
                                     "evidence on the polynomial ring (separation hypothesis "
                                     "assumed)";

    if (exact && has_value && rep.isolated_cycles > value) {
        rep.verdict = "VIOLATION";
        rep.explanation = "detected " + std::to_string(rep.isolated_cycles) +
                          " isolated cycles but the exact corank is " + std::to_string(value) +
                          "; " + basis_note;
    } else if (L.diverging || (has_value && rep.isolated_cycles <= value)) {
        rep.verdict = "CONSISTENT";
        rep.explanation = "cycle count " + std::to_string(rep.isolated_cycles) +
                          " respects the bound (" + L.verdict + "); " + basis_note;
    } else {
        rep.verdict = "INCONCLUSIVE";
        rep.explanation = "ladder verdict '" + L.verdict +
                          "' does not certify the bound at this truncation; " + basis_note;
    }
    if (rep.continuum)
        rep.explanation += "; a continuum band of non-isolated closed orbits was detected "
                           "and is not counted as isolated cycles";
    return rep;
}

} // namespace symlab
