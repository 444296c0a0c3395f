#include "eulera/transport.hpp"

#include <doctest.h>

#include "test_helpers.hpp"

using namespace eulera;
using namespace eulera::testing;

namespace {

VectorField uniform_velocity(const Grid& g, Real c) {
    return VectorField(from_function(g, [c](Real, Real) { return c; }), ScalarField(g));
}

VectorField cellular_velocity(const Grid& g) {
    const Real kap = 2.0 * M_PI / g.L;
    return perp_gradient(from_function(
        g, [kap](Real x, Real y) { return std::sin(kap * x) * std::sin(M_PI * y); }));
}

}  // namespace

TEST_CASE("interpolants reproduce nodal values") {
    const Grid g = make_grid(2.0 * M_PI, 16, 24);
    const ScalarField f = random_smooth_field(g, 9u);
    for (InterpKind kind : {InterpKind::Spectral, InterpKind::Cubic}) {
        const ScalarInterpolant fi(f, kind);
        Real worst = 0;
        for (int i = 0; i < g.n1; ++i)
            for (int j = 0; j < g.n2; ++j)
                worst = std::max(worst, std::abs(fi.eval(g.x1[i], g.x2[j]) - f.v(i, j)));
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("interpolation of a constant is that constant") {
    const Grid g = make_grid(3.0, 16, 24);
    const ScalarField c = from_function(g, [](Real, Real) { return 2.25; });
    for (InterpKind kind : {InterpKind::Spectral, InterpKind::Cubic}) {
        const ScalarInterpolant ci(c, kind);
        Real worst = 0;
        for (Real x : {0.1, 1.234, 2.9})
            for (Real y : {0.001, 0.37, 0.5, 0.993})
                worst = std::max(worst, std::abs(ci.eval(x, y) - 2.25));
        CHECK(worst <= 1e-13);
    }
}

TEST_CASE("advect with zero velocity is the identity, bitwise") {
    const Grid g = make_grid(2.0 * M_PI, 16, 24);
    const ScalarField q = random_smooth_field(g, 13u);
    AdvectionScheme scheme(g);
    const ScalarField out = advect(scheme, q, VectorField(g), 0.01);
    CHECK((out.v - q.v).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("uniform translation is an exact shift") {
    const Grid g = make_grid(2.0 * M_PI, 64, 32);
    const Real kap = 2.0 * M_PI / g.L, c = 1.0, dt = 0.01;
    const ScalarField q = from_function(
        g, [kap](Real x, Real y) { return std::sin(kap * x) * std::sin(M_PI * y); });
    const ScalarField want = from_function(g, [&](Real x, Real y) {
        return std::sin(kap * (x - c * dt)) * std::sin(M_PI * y);
    });

    AdvectionScheme spectral(g);
    spectral.limiter = LimiterMode::Off;
    CHECK(max_abs_diff(advect(spectral, q, uniform_velocity(g, c), dt), want) <= 1e-10);

    // the cubic path is 4th order once the displacement scales with the
    // cell: shifting by a fixed quarter cell shrinks the error 16x per
    // n1-doubling
    Real errs[2];
    int idx = 0;
    for (int n1 : {32, 64}) {
        const Grid gc = make_grid(2.0 * M_PI, n1, 32);
        const Real dtc = 0.25 * gc.w1 / c;
        const ScalarField qc = from_function(
            gc, [kap](Real x, Real y) { return std::sin(kap * x) * std::sin(M_PI * y); });
        const ScalarField wc = from_function(gc, [&](Real x, Real y) {
            return std::sin(kap * (x - c * dtc)) * std::sin(M_PI * y);
        });
        AdvectionScheme cubic(gc);
        cubic.interp = InterpKind::Cubic;
        cubic.limiter = LimiterMode::Off;
        errs[idx++] = max_abs_diff(advect(cubic, qc, uniform_velocity(gc, c), dtc), wc);
    }
    CHECK(errs[1] <= 1e-5);
    CHECK(errs[0] / errs[1] >= 10.0);
}

TEST_CASE("parallel shear transports against the exact solution") {
    const Grid g = make_grid(2.0 * M_PI, 32, 48);
    const VectorField u(from_function(g, [](Real, Real y) { return std::sin(M_PI * y); }),
                        ScalarField(g));
    const Real kap = 2.0 * M_PI / g.L;
    ScalarField q = from_function(
        g, [kap](Real x, Real y) { return std::cos(kap * x) * std::sin(M_PI * y); });
    AdvectionScheme scheme(g);
    const Real dt = 0.01;
    const int nsteps = 20;
    for (int n = 0; n < nsteps; ++n) q = advect(scheme, q, u, dt);
    const Real t = nsteps * dt;
    const ScalarField want = from_function(g, [&](Real x, Real y) {
        return std::cos(kap * (x - t * std::sin(M_PI * y))) * std::sin(M_PI * y);
    });
    CHECK(l2_norm(q - want) <= 1e-8 * l2_norm(want));
}

TEST_CASE("max principle and norm decay") {
    const Grid g = make_grid(2.0 * M_PI, 32, 40);
    const VectorField u = cellular_velocity(g);
    for (LimiterMode lim : {LimiterMode::Cell, LimiterMode::Global}) {
        ScalarField q = random_smooth_field(g, 21u);
        const Real qmax = q.v.maxCoeff(), qmin = q.v.minCoeff();
        Real norm_prev = l2_norm(q);
        AdvectionScheme scheme(g);
        scheme.limiter = lim;
        for (int n = 0; n < 10; ++n) {
            q = advect(scheme, q, u, 0.01);
            CHECK(q.v.maxCoeff() <= qmax);
            CHECK(q.v.minCoeff() >= qmin);
            const Real norm_now = l2_norm(q);
            CHECK(norm_now <= norm_prev * (1.0 + 1e-10));
            norm_prev = norm_now;
        }
    }
}

TEST_CASE("constant fields are fixed points of advection") {
    const Grid g = make_grid(2.0 * M_PI, 16, 32);
    const ScalarField c = from_function(g, [](Real, Real) { return -1.5; });
    AdvectionScheme scheme(g);
    const ScalarField out = advect(scheme, c, cellular_velocity(g), 0.02);
    // limiter clips interpolation round-off to the exact cell range
    CHECK((out.v.array() == -1.5).all());
}

TEST_CASE("CFL guard") {
    const Grid g = make_grid(2.0 * M_PI, 16, 32);
    const VectorField u = uniform_velocity(g, 1.0);
    AdvectionScheme scheme(g);
    const ScalarField q = random_smooth_field(g, 2u);
    CHECK_THROWS_AS(advect(scheme, q, u, 10.0 * g.L), NumericalError);
    ScalarField qn(g);
    VectorField bad = u;
    bad.u1.v(0, 0) = std::numeric_limits<Real>::infinity();
    CHECK_THROWS_AS(advect(scheme, q, bad, 0.01), ValidationError);
}

TEST_CASE("step error estimate: trivial cases and Richardson order") {
    const Grid g = make_grid(2.0 * M_PI, 64, 48);
    const ScalarField q = random_smooth_field(g, 3u);
    AdvectionScheme scheme(g);
    scheme.limiter = LimiterMode::Off;

    CHECK(step_error_estimate(scheme, q, VectorField(g), 0.02) == 0.0);
    CHECK(step_error_estimate(scheme, q, uniform_velocity(g, 1.0), 0.02) <= 1e-10);

    // curved trajectories: estimates shrink at order >= 2 under dt halving
    const VectorField u = cellular_velocity(g);
    const Real e1 = step_error_estimate(scheme, q, u, 0.05);
    const Real e2 = step_error_estimate(scheme, q, u, 0.025);
    const Real e3 = step_error_estimate(scheme, q, u, 0.0125);
    CHECK(e2 < e1);
    CHECK(e3 < e2);
    CHECK(std::log2(e1 / e2) >= 1.7);
    CHECK(std::log2(e2 / e3) >= 1.7);
}

TEST_CASE("reversibility: forward then backward returns q at order >= 2") {
    const Grid g = make_grid(2.0 * M_PI, 48, 48);
    const ScalarField q = random_smooth_field(g, 8u);
    const VectorField u = cellular_velocity(g);
    VectorField minus_u = u;
    minus_u *= -1.0;
    AdvectionScheme scheme(g);
    scheme.limiter = LimiterMode::Off;

    auto roundtrip_err = [&](Real dt) {
        const ScalarField there = advect(scheme, q, u, dt);
        const ScalarField back = advect(scheme, there, minus_u, dt);
        return l2_norm(back - q);
    };
    const Real e1 = roundtrip_err(0.05), e2 = roundtrip_err(0.025);
    CHECK(std::log2(e1 / e2) >= 1.7);
}
