#include "eulera/grid.hpp"
#include "eulera/field.hpp"

#include <doctest.h>

#include "test_helpers.hpp"

using namespace eulera;
using namespace eulera::testing;

TEST_CASE("make_grid rejects bad arguments") {
    CHECK_THROWS_AS(make_grid(2.0 * M_PI, 5, 16), ValidationError);   // odd n1
    CHECK_THROWS_AS(make_grid(2.0 * M_PI, 2, 16), ValidationError);   // undersized n1
    CHECK_THROWS_AS(make_grid(2.0 * M_PI, 16, 4), ValidationError);   // undersized n2
    CHECK_THROWS_AS(make_grid(0.0, 16, 16), ValidationError);         // nonpositive L
    CHECK_THROWS_AS(make_grid(-1.0, 16, 16), ValidationError);
}

TEST_CASE("wall nodes are exact endpoints") {
    const Grid g = make_grid(2.0 * M_PI, 4, 8);
    CHECK(g.x2[0] == 0.0);
    CHECK(g.x2[7] == 1.0);
    for (int i = 1; i < g.n2; ++i) CHECK(g.x2[i] > g.x2[i - 1]);
}

TEST_CASE("differentiating a constant is zero") {
    const Grid g = make_grid(3.0, 16, 24);
    const ScalarField c = from_function(g, [](Real, Real) { return 3.7; });
    CHECK(max_abs_diff(deriv_x1(c), ScalarField(g)) <= 1e-12 * 3.7);
    CHECK(max_abs_diff(deriv_x2(c), ScalarField(g)) <= 1e-12 * 3.7);
}

TEST_CASE("Chebyshev differentiation is exact for low-degree polynomials") {
    const Grid g = make_grid(1.0, 4, 16);
    const ScalarField f = from_function(g, [](Real, Real y) { return y * y; });
    const ScalarField want = from_function(g, [](Real, Real y) { return 2.0 * y; });
    CHECK(max_abs_diff(deriv_x2(f), want) <= 1e-10);

    const ScalarField f3 = from_function(g, [](Real, Real y) { return y * y * y; });
    const ScalarField want3 = from_function(g, [](Real, Real y) { return 3.0 * y * y; });
    CHECK(max_abs_diff(deriv_x2(f3), want3) <= 1e-9);
}

TEST_CASE("quadrature: constants and sin^2") {
    const Grid g = make_grid(2.0 * M_PI, 8, 32);
    const ScalarField one = from_function(g, [](Real, Real) { return 1.0; });
    // integral of 1 over the channel is L; recover it from the l2 norm of 1.
    const Real area = l2_norm(one) * l2_norm(one);
    CHECK(rel_err(area, g.L) <= 1e-12);

    // 1D Clenshaw-Curtis of sin^2(pi y) on [0,1] equals 1/2.
    Real s = 0;
    for (int j = 0; j < g.n2; ++j) s += g.w2[j] * std::pow(std::sin(M_PI * g.x2[j]), 2);
    CHECK(std::abs(s - 0.5) <= 1e-10);
}

TEST_CASE("gradient oracle examples") {
    const Grid g = make_grid(2.0 * M_PI, 32, 32);
    const VectorField gc = gradient(from_function(g, [](Real, Real) { return 2.5; }));
    CHECK(l2_norm(gc) <= 1e-12);

    const Real kap = 2.0 * M_PI / g.L;
    const ScalarField f = from_function(g, [kap](Real x, Real) { return std::sin(kap * x); });
    const VectorField gf = gradient(f);
    const ScalarField want1 =
        from_function(g, [kap](Real x, Real) { return kap * std::cos(kap * x); });
    CHECK(max_abs_diff(gf.u1, want1) <= 1e-10);
    CHECK(gf.u2.v.cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("x1 spectral differentiation exact below Nyquist") {
    const Grid g = make_grid(5.0, 16, 8);
    for (int k = 1; k < g.n1 / 2; ++k) {
        const Real kap = 2.0 * M_PI * k / g.L;
        const ScalarField f =
            from_function(g, [kap](Real x, Real) { return std::sin(kap * x) + std::cos(kap * x); });
        const ScalarField want = from_function(
            g, [kap](Real x, Real) { return kap * (std::cos(kap * x) - std::sin(kap * x)); });
        CHECK(max_abs_diff(deriv_x1(f), want) <= 1e-12 * kap);
    }
}

TEST_CASE("perp_gradient examples and discrete divergence") {
    const Grid g = make_grid(2.0 * M_PI, 32, 48);
    const ScalarField f =
        from_function(g, [](Real, Real y) { return y * y * (1.0 - y) * (1.0 - y); });
    const VectorField pg = perp_gradient(f);
    const ScalarField want1 = from_function(
        g, [](Real, Real y) { return -2.0 * y * (1.0 - y) * (1.0 - 2.0 * y); });
    CHECK(max_abs_diff(pg.u1, want1) <= 1e-9);
    CHECK(pg.u2.v.cwiseAbs().maxCoeff() <= 1e-9);

    const ScalarField r = random_smooth_field(g, 42u);
    const VectorField pr = perp_gradient(r);
    const Real div_max = divergence(pr).v.cwiseAbs().maxCoeff();
    CHECK(div_max <= 1e-10 * norms(r).h1_semi);
}

TEST_CASE("curl examples and the Laplacian identity") {
    const Grid g = make_grid(2.0 * M_PI, 32, 48);
    CHECK(l2_norm(curl(VectorField(g))) == 0.0);

    const VectorField shear(from_function(g, [](Real, Real y) { return std::sin(M_PI * y); }),
                            ScalarField(g));
    const ScalarField want =
        from_function(g, [](Real, Real y) { return -M_PI * std::cos(M_PI * y); });
    CHECK(max_abs_diff(curl(shear), want) <= 1e-9);

    const Real kap = 2.0 * M_PI / g.L;
    const ScalarField psi = from_function(
        g, [kap](Real x, Real y) { return std::sin(kap * x) * std::sin(M_PI * y); });
    const ScalarField got = curl(perp_gradient(psi));
    ScalarField wantlap = psi;
    wantlap *= -(kap * kap + M_PI * M_PI);
    CHECK(max_abs_diff(got, wantlap) <= 1e-8 * (kap * kap + M_PI * M_PI));

    // operator identity on a random smooth field
    const ScalarField r = random_smooth_field(g, 7u);
    const ScalarField lhs = curl(perp_gradient(r));
    const ScalarField rhs = laplacian(r);
    CHECK(l2_norm(lhs - rhs) <= 1e-9 * std::max(1.0, l2_norm(rhs)));
}

TEST_CASE("mode round trip") {
    const Grid g = make_grid(4.0, 16, 16);
    const ScalarField r = random_smooth_field(g, 3u, 6, 5);
    const ScalarField back = from_modes(g, to_modes(r));
    CHECK(max_abs_diff(back, r) <= 1e-12 * std::max(1.0, r.v.cwiseAbs().maxCoeff()));
}
