#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "symlab/errors.hpp"
#include "symlab/flow.hpp"

using namespace symlab;

namespace {

constexpr double pi = std::numbers::pi;

GaussianPoly2 P(const std::string& s) { return parse_poly(s); }

FlowField linear_center() { return FlowField::from_polys(P("-y"), P("x")); }

FlowField van_der_pol() { return FlowField::from_polys(P("y"), P("-x+y-x^2*y")); }

// Polar form r' = r (1 - r^2)(4 - r^2): stable cycle at r = 1, unstable at
// r = 2.
FlowField two_ring() {
    GaussianPoly2 rr = P("x^2+y^2");
    GaussianPoly2 factor = (P("1") - rr) * (P("4") - rr);
    return FlowField::from_polys(P("-y") + P("x") * factor, P("x") + P("y") * factor);
}

} // namespace

TEST_CASE("compiled evaluators match exact evaluation at rational points") {
    GaussianPoly2 p = P("3/7*x^2*y-2*x+5/3");
    GaussianPoly2 q = P("x*y^3-1/2*y");
    FlowField f = FlowField::from_polys(p, q);
    for (int i = -3; i <= 3; ++i)
        for (int j = -3; j <= 3; ++j) {
            GaussianRational x0(mpq_class(i, 2)), y0(mpq_class(j, 3));
            double ex = p.evaluate(x0, y0).re.get_d();
            double ey = q.evaluate(x0, y0).re.get_d();
            auto v = f.eval(x0.re.get_d(), y0.re.get_d());
            CHECK(std::abs(v[0] - ex) <= 1e-12 * (1.0 + std::abs(ex)));
            CHECK(std::abs(v[1] - ey) <= 1e-12 * (1.0 + std::abs(ey)));
        }
}

TEST_CASE("jacobian entries come from the partial derivatives") {
    FlowField f = van_der_pol();
    auto j = f.jacobian(0.5, -1.5);
    CHECK(j[0] == doctest::Approx(0.0));                       // dP/dx
    CHECK(j[1] == doctest::Approx(1.0));                       // dP/dy
    CHECK(j[2] == doctest::Approx(-1.0 - 2 * 0.5 * -1.5));     // dQ/dx
    CHECK(j[3] == doctest::Approx(1.0 - 0.25));                 // dQ/dy
}

TEST_CASE("flow field rejects complex coefficients") {
    CHECK_THROWS_AS(FlowField::from_polys(P("i*x"), P("y")), config_error);
}

TEST_CASE("linear center returns to the start after one period") {
    Trajectory tr = integrate_orbit(linear_center(), {1.0, 0.0}, 2 * pi, 1e-9);
    auto last = tr.y.back();
    CHECK(std::hypot(last[0] - 1.0, last[1]) < 1e-6);
}

TEST_CASE("energy stays within 10x tolerance on the linear center") {
    for (double tol : {1e-7, 1e-9}) {
        Trajectory tr = integrate_orbit(linear_center(), {1.0, 0.0}, 2 * pi, tol);
        double worst = 0;
        for (const auto& y : tr.y)
            worst = std::max(worst, std::abs(y[0] * y[0] + y[1] * y[1] - 1.0));
        CHECK(worst < 10 * tol);
    }
}

TEST_CASE("observed convergence order of the integrator is at least 4.5") {
    // Return error at t = 2 pi against the average accepted step size, over
    // a tolerance sweep; the 5(4) pair should show slope ~5.
    std::vector<double> log_h, log_e;
    for (double tol : {1e-5, 1e-6, 1e-7, 1e-8, 1e-9}) {
        Trajectory tr = integrate_orbit(linear_center(), {1.0, 0.0}, 2 * pi, tol);
        auto last = tr.y.back();
        double err = std::hypot(last[0] - 1.0, last[1]);
        double h_avg = 2 * pi / static_cast<double>(tr.t.size() - 1);
        log_h.push_back(std::log(h_avg));
        log_e.push_back(std::log(err));
    }
    double n = static_cast<double>(log_h.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < log_h.size(); ++i) {
        sx += log_h[i];
        sy += log_e[i];
        sxx += log_h[i] * log_h[i];
        sxy += log_h[i] * log_e[i];
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope >= 4.5);
}

TEST_CASE("van der pol spirals outward from near the origin") {
    Trajectory tr = integrate_orbit(van_der_pol(), {0.01, 0.0}, 20.0, 1e-9);
    double r0 = 0.01;
    double rmax = 0;
    for (const auto& y : tr.y) rmax = std::max(rmax, std::hypot(y[0], y[1]));
    CHECK(rmax > 10 * r0);
}

TEST_CASE("exponential growth trips the blow-up guard") {
    FlowField f = FlowField::from_polys(P("x"), P("y"));
    CHECK_THROWS_AS(integrate_orbit(f, {1.0, 1.0}, 100.0, 1e-9), divergence_error);
}

TEST_CASE("tolerance outside the allowed window is rejected") {
    CHECK_THROWS_AS(integrate_orbit(linear_center(), {1.0, 0.0}, 1.0, 1e-3), config_error);
    CHECK_THROWS_AS(integrate_orbit(linear_center(), {1.0, 0.0}, 1.0, 1e-13), config_error);
}

TEST_CASE("return map examples") {
    // Identity on the linear center.
    for (double r : {0.5, 1.0, 1.7}) {
        ReturnResult ret = return_map(linear_center(), 0.0, r, 1e-9);
        CHECK(std::abs(ret.radius - r) < 1e-8);
        CHECK(ret.time == doctest::Approx(2 * pi).epsilon(1e-6));
    }
    // Inside the van der Pol cycle the orbit moves outward.
    CHECK(return_map(van_der_pol(), 0.0, 0.5, 1e-9).radius > 0.5);
    // Between the two rings the flow contracts toward r = 1.
    CHECK(return_map(two_ring(), 0.0, 1.5, 1e-9).radius < 1.5);
}

TEST_CASE("return map transversality guard") {
    FlowField radial = FlowField::from_polys(P("x"), P("y"));
    CHECK_THROWS_AS(return_map(radial, 0.0, 1.0, 1e-9), no_return_error);
}

TEST_CASE("van der pol has exactly one stable cycle") {
    CycleScanResult res = find_limit_cycles(van_der_pol(), 0.1, 4.0, 60, 1e-9);
    REQUIRE(res.cycles.size() == 1);
    CHECK(res.cycles[0].stability == CycleStability::stable);
    CHECK(res.cycles[0].radius > 1.5);
    CHECK(res.cycles[0].radius < 2.5);
    CHECK(res.cycles[0].residual < 1e-9);
    CHECK_FALSE(res.continuum_flag);
}

TEST_CASE("two-ring field has a stable cycle at 1 and an unstable cycle at 2") {
    CycleScanResult res = find_limit_cycles(two_ring(), 0.2, 3.0, 60, 1e-9);
    REQUIRE(res.cycles.size() == 2);
    CHECK(res.cycles[0].radius == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(res.cycles[0].stability == CycleStability::stable);
    CHECK(res.cycles[1].radius == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(res.cycles[1].stability == CycleStability::unstable);
    for (const auto& c : res.cycles) CHECK(c.residual < 1e-9);
}

TEST_CASE("linear center reports a continuum, not isolated cycles") {
    CycleScanResult res = find_limit_cycles(linear_center(), 0.5, 2.0, 24, 1e-9);
    CHECK(res.cycles.empty());
    CHECK(res.continuum_flag);
    REQUIRE(res.continuum_bands.size() == 1);
    CHECK(res.continuum_bands[0].stability == CycleStability::continuum);
    CHECK(res.continuum_bands[0].period == doctest::Approx(2 * pi).epsilon(1e-6));
}

TEST_CASE("cycle detection is stable under sample doubling") {
    CycleScanResult a = find_limit_cycles(two_ring(), 0.2, 3.0, 40, 1e-9);
    CycleScanResult b = find_limit_cycles(two_ring(), 0.2, 3.0, 80, 1e-9);
    REQUIRE(a.cycles.size() == b.cycles.size());
    for (std::size_t i = 0; i < a.cycles.size(); ++i)
        CHECK(std::abs(a.cycles[i].radius - b.cycles[i].radius) < 1e-6);
}

TEST_CASE("stability classification matches the finite-difference derivative sign") {
    CycleScanResult res = find_limit_cycles(two_ring(), 0.2, 3.0, 60, 1e-9);
    for (const auto& c : res.cycles) {
        double h = 1e-4;
        double dplus = return_map(two_ring(), 0.0, c.radius + h, 1e-10).radius - (c.radius + h);
        double dminus = return_map(two_ring(), 0.0, c.radius - h, 1e-10).radius - (c.radius - h);
        double deriv = (dplus - dminus) / (2 * h); // R'(r) - 1
        if (c.stability == CycleStability::stable) CHECK(deriv < 0);
        if (c.stability == CycleStability::unstable) CHECK(deriv > 0);
    }
}

TEST_CASE("radial flows yield zero cycles with recorded sample errors") {
    FlowField radial = FlowField::from_polys(P("x"), P("y"));
    CycleScanResult res = find_limit_cycles(radial, 0.5, 2.0, 8, 1e-9);
    CHECK(res.cycles.empty());
    CHECK(res.sample_errors == 8);
    CHECK_FALSE(res.continuum_flag);
}

TEST_CASE("bound comparison verdicts") {
    // Euler field: no closed orbits, exact corank 1.
    BoundCompareReport euler = bound_compare(P("x"), P("y"), 0.5, 2.0, 8, 1e-9, 4, 8);
    CHECK(euler.isolated_cycles == 0);
    CHECK(euler.ladder.monomial_eigenbasis);
    CHECK(euler.verdict == "CONSISTENT");

    // Pure d/dx field: no closed orbits, corank 0.
    BoundCompareReport ddx = bound_compare(P("1"), P("0"), 0.5, 2.0, 8, 1e-9, 4, 8);
    CHECK(ddx.isolated_cycles == 0);
    CHECK(ddx.verdict == "CONSISTENT");

    // Van der Pol: one cycle; the ladder may or may not certify it, but a
    // VIOLATION can only come from an exact corank.
    BoundCompareReport vdp = bound_compare(P("y"), P("-x+y-x^2*y"), 0.1, 4.0, 40, 1e-9, 4, 8);
    CHECK(vdp.isolated_cycles == 1);
    CHECK(vdp.verdict != "VIOLATION");

    // Linear center: continuum plus a diverging ladder.
    BoundCompareReport center = bound_compare(P("-y"), P("x"), 0.5, 2.0, 12, 1e-9, 4, 8);
    CHECK(center.continuum);
    CHECK(center.isolated_cycles == 0);
    CHECK(center.verdict == "CONSISTENT");
}
