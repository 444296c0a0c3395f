#include "eulera/field.hpp"

#include <doctest.h>

#include "test_helpers.hpp"

using namespace eulera;
using namespace eulera::testing;

TEST_CASE("norms: zero field and closed forms") {
    const Grid g = make_grid(1.0, 8, 48);
    const NormReport z = norms(ScalarField(g));
    CHECK(z.l2 == 0.0);
    CHECK(z.h1_semi == 0.0);
    CHECK(z.h3 == 0.0);
    CHECK(z.linf == 0.0);

    // f = sin(pi x2) on the L=1 channel: every derivative has closed form.
    const ScalarField f = from_function(g, [](Real, Real y) { return std::sin(M_PI * y); });
    const NormReport r = norms(f);
    CHECK(rel_err(r.l2, std::sqrt(0.5)) <= 1e-9);
    CHECK(rel_err(r.h1_semi, M_PI * std::sqrt(0.5)) <= 1e-8);
    const Real pi2 = M_PI * M_PI;
    const Real h3_want = std::sqrt(0.5 * (1.0 + pi2 + pi2 * pi2 + pi2 * pi2 * pi2));
    CHECK(rel_err(r.h3, h3_want) <= 1e-8);
}

TEST_CASE("norms are absolutely homogeneous") {
    const Grid g = make_grid(3.0, 16, 24);
    const ScalarField f = random_smooth_field(g, 11u);
    const NormReport a = norms(f);
    ScalarField cf = f;
    cf *= -2.5;
    const NormReport b = norms(cf);
    CHECK(rel_err(b.l2, 2.5 * a.l2) <= 1e-12);
    CHECK(rel_err(b.h1_semi, 2.5 * a.h1_semi) <= 1e-12);
    CHECK(rel_err(b.h3, 2.5 * a.h3) <= 1e-12);
    CHECK(rel_err(b.linf, 2.5 * a.linf) <= 1e-12);
}

TEST_CASE("quadrature exactness for x1-mean-free modes") {
    const Grid g = make_grid(2.0 * M_PI, 16, 40);
    // l2 of sin(2 pi k x1/L) g(x2) must equal sqrt(L/2) * (1D l2 of g);
    // with g = x2^2 (1-x2), integral of g^2 is 1/105.
    for (int k : {1, 3}) {
        const Real kap = 2.0 * M_PI * k / g.L;
        const ScalarField f = from_function(
            g, [kap](Real x, Real y) { return std::sin(kap * x) * y * y * (1.0 - y); });
        const Real want = std::sqrt(g.L / 2.0 / 105.0);
        CHECK(rel_err(l2_norm(f), want) <= 1e-10);
    }
}

TEST_CASE("vector norms accumulate both components") {
    const Grid g = make_grid(1.0, 8, 32);
    const ScalarField f = from_function(g, [](Real, Real y) { return std::sin(M_PI * y); });
    const VectorField u(f, f);
    CHECK(rel_err(l2_norm(u), std::sqrt(2.0) * l2_norm(f)) <= 1e-12);
    CHECK(rel_err(norms(u).h1_semi, std::sqrt(2.0) * norms(f).h1_semi) <= 1e-12);
}
