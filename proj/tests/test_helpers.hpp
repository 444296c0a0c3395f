#pragma once
// Shared fixtures for the unit and acceptance suites.

#include "eulera/field.hpp"

#include <random>

namespace eulera::testing {

// Smooth random field from seeded low-mode coefficients; analytic in both
// directions, optionally vanishing (with derivative) at the walls.
inline ScalarField random_smooth_field(const Grid& g, unsigned seed, int kmax = 3, int jmax = 3,
                                       bool wall_clamped = false) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<Real> coef(-1.0, 1.0);
    ScalarField f(g);
    for (int k = 0; k <= kmax; ++k)
        for (int j = 1; j <= jmax; ++j) {
            const Real ac = coef(rng), as = coef(rng);
            const Real kap = 2.0 * M_PI * k / g.L;
            for (int i1 = 0; i1 < g.n1; ++i1)
                for (int i2 = 0; i2 < g.n2; ++i2) {
                    const Real x = g.x1[i1], y = g.x2[i2];
                    const Real gy = wall_clamped
                                        ? std::pow(std::sin(M_PI * y), 2) * std::sin(j * M_PI * y)
                                        : std::sin(j * M_PI * y);
                    f.v(i1, i2) += (ac * std::cos(kap * x) + (k > 0 ? as * std::sin(kap * x) : 0.0)) * gy;
                }
        }
    return f;
}

inline Real rel_err(Real got, Real want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

inline Real max_abs_diff(const ScalarField& a, const ScalarField& b) {
    return (a.v - b.v).cwiseAbs().maxCoeff();
}

}  // namespace eulera::testing
