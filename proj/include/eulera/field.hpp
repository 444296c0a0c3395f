#pragma once
// Nodal scalar and vector fields on a Grid, spectral differential operators
// (gradient, perp-gradient, curl, divergence, Laplacian) and the discrete
// L2 / H1 / H3 / Linf norms.  All operations are pure.

#include "eulera/grid.hpp"

#include <functional>

namespace eulera {

struct ScalarField {
    const Grid* grid = nullptr;
    MatrixXd v;  // v(i1, i2), x1 along rows

    ScalarField() = default;
    explicit ScalarField(const Grid& g) : grid(&g), v(MatrixXd::Zero(g.n1, g.n2)) {}
    ScalarField(const Grid& g, MatrixXd values) : grid(&g), v(std::move(values)) {}

    ScalarField& operator+=(const ScalarField& o) { v += o.v; return *this; }
    ScalarField& operator-=(const ScalarField& o) { v -= o.v; return *this; }
    ScalarField& operator*=(Real c) { v *= c; return *this; }

    friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
    friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
    friend ScalarField operator*(Real c, ScalarField a) { return a *= c; }
};

struct VectorField {
    ScalarField u1, u2;

    VectorField() = default;
    explicit VectorField(const Grid& g) : u1(g), u2(g) {}
    VectorField(ScalarField a, ScalarField b) : u1(std::move(a)), u2(std::move(b)) {}

    const Grid* grid() const { return u1.grid; }

    VectorField& operator+=(const VectorField& o) { u1 += o.u1; u2 += o.u2; return *this; }
    VectorField& operator-=(const VectorField& o) { u1 -= o.u1; u2 -= o.u2; return *this; }
    VectorField& operator*=(Real c) { u1 *= c; u2 *= c; return *this; }

    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator*(Real c, VectorField a) { return a *= c; }
};

struct NormReport {
    Real l2 = 0;
    Real h1_semi = 0;
    Real h3 = 0;
    Real linf = 0;
};

/// Samples f(x1, x2) at the grid nodes.
ScalarField from_function(const Grid& g, const std::function<Real(Real, Real)>& f);

// Spectral derivatives: trigonometric in x1, collocation matrix in x2.
ScalarField deriv_x1(const ScalarField& f);
ScalarField deriv_x2(const ScalarField& f);

VectorField gradient(const ScalarField& f);
/// perp-gradient (-df/dx2, df/dx1); the resulting field is discretely
/// divergence-free because the two directional operators commute exactly.
VectorField perp_gradient(const ScalarField& f);
ScalarField curl(const VectorField& u);
ScalarField divergence(const VectorField& u);
/// Laplacian as the composition d1(d1 .) + d2(d2 .), which makes
/// curl(perp_gradient(f)) == laplacian(f) an exact operator identity.
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& u);

// Fourier coefficient view in x1 (full complex spectrum, one row per mode).
MatrixXcd to_modes(const ScalarField& f);
ScalarField from_modes(const Grid& g, const MatrixXcd& modes);

// Quadrature-weighted inner products and norms.
Real inner(const ScalarField& a, const ScalarField& b);
Real inner(const VectorField& a, const VectorField& b);
Real l2_norm(const ScalarField& f);
Real l2_norm(const VectorField& u);

NormReport norms(const ScalarField& f);
NormReport norms(const VectorField& u);

/// Full H1 norm sqrt(l2^2 + |grad|^2), the Picard convergence metric.
Real h1_norm(const VectorField& u);

bool is_finite(const ScalarField& f);
bool is_finite(const VectorField& u);

}  // namespace eulera
