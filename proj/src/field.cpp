#include "eulera/field.hpp"

#include <cmath>

namespace eulera {

namespace {

void check_same_grid(const ScalarField& a, const ScalarField& b) {
    if (a.grid != b.grid)
        throw ValidationError("fields live on different grids");
}

}  // namespace

ScalarField from_function(const Grid& g, const std::function<Real(Real, Real)>& f) {
    ScalarField out(g);
    for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j) out.v(i, j) = f(g.x1[i], g.x2[j]);
    return out;
}

ScalarField deriv_x1(const ScalarField& f) {
    return ScalarField(*f.grid, f.grid->dx1 * f.v);
}

ScalarField deriv_x2(const ScalarField& f) {
    return ScalarField(*f.grid, f.v * f.grid->d2.transpose());
}

VectorField gradient(const ScalarField& f) {
    return VectorField(deriv_x1(f), deriv_x2(f));
}

VectorField perp_gradient(const ScalarField& f) {
    ScalarField d2f = deriv_x2(f);
    d2f *= -1.0;
    return VectorField(std::move(d2f), deriv_x1(f));
}

ScalarField curl(const VectorField& u) {
    return deriv_x1(u.u2) - deriv_x2(u.u1);
}

ScalarField divergence(const VectorField& u) {
    return deriv_x1(u.u1) + deriv_x2(u.u2);
}

ScalarField laplacian(const ScalarField& f) {
    return deriv_x1(deriv_x1(f)) + deriv_x2(deriv_x2(f));
}

VectorField laplacian(const VectorField& u) {
    return VectorField(laplacian(u.u1), laplacian(u.u2));
}

MatrixXcd to_modes(const ScalarField& f) {
    return f.grid->dft * f.v;
}

ScalarField from_modes(const Grid& g, const MatrixXcd& modes) {
    return ScalarField(g, (g.idft * modes).real());
}

Real inner(const ScalarField& a, const ScalarField& b) {
    check_same_grid(a, b);
    const Grid& g = *a.grid;
    // Fixed-order accumulation keeps reruns bit-identical.
    Real s = 0.0;
    for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j) s += a.v(i, j) * b.v(i, j) * g.w2[j];
    return s * g.w1;
}

Real inner(const VectorField& a, const VectorField& b) {
    return inner(a.u1, b.u1) + inner(a.u2, b.u2);
}

Real l2_norm(const ScalarField& f) { return std::sqrt(std::max(0.0, inner(f, f))); }

Real l2_norm(const VectorField& u) { return std::sqrt(std::max(0.0, inner(u, u))); }

namespace {

// Squared L2 norms of all derivatives with 1 <= |beta| <= 3, plus Linf of f.
void accumulate_norms(const ScalarField& f, Real& grad_sq, Real& h3_sq, Real& linf) {
    const ScalarField fx = deriv_x1(f);
    const ScalarField fy = deriv_x2(f);
    const ScalarField fxx = deriv_x1(fx);
    const ScalarField fxy = deriv_x2(fx);
    const ScalarField fyy = deriv_x2(fy);

    const Real l0 = inner(f, f);
    const Real gx = inner(fx, fx), gy = inner(fy, fy);
    grad_sq += gx + gy;

    Real sum = l0 + gx + gy;
    sum += inner(fxx, fxx) + inner(fxy, fxy) + inner(fyy, fyy);
    const ScalarField fxxx = deriv_x1(fxx);
    const ScalarField fxxy = deriv_x2(fxx);
    const ScalarField fxyy = deriv_x2(fxy);
    const ScalarField fyyy = deriv_x2(fyy);
    sum += inner(fxxx, fxxx) + inner(fxxy, fxxy) + inner(fxyy, fxyy) + inner(fyyy, fyyy);
    h3_sq += sum;

    linf = std::max(linf, f.v.cwiseAbs().maxCoeff());
}

}  // namespace

NormReport norms(const ScalarField& f) {
    NormReport r;
    Real grad_sq = 0, h3_sq = 0, linf = 0;
    accumulate_norms(f, grad_sq, h3_sq, linf);
    r.l2 = l2_norm(f);
    r.h1_semi = std::sqrt(std::max(0.0, grad_sq));
    r.h3 = std::sqrt(std::max(0.0, h3_sq));
    r.linf = linf;
    return r;
}

NormReport norms(const VectorField& u) {
    NormReport r;
    Real grad_sq = 0, h3_sq = 0, linf = 0;
    accumulate_norms(u.u1, grad_sq, h3_sq, linf);
    accumulate_norms(u.u2, grad_sq, h3_sq, linf);
    r.l2 = l2_norm(u);
    r.h1_semi = std::sqrt(std::max(0.0, grad_sq));
    r.h3 = std::sqrt(std::max(0.0, h3_sq));
    r.linf = linf;
    return r;
}

Real h1_norm(const VectorField& u) {
    const Real l2 = l2_norm(u);
    Real grad_sq = 0;
    for (const ScalarField* c : {&u.u1, &u.u2}) {
        const ScalarField cx = deriv_x1(*c);
        const ScalarField cy = deriv_x2(*c);
        grad_sq += inner(cx, cx) + inner(cy, cy);
    }
    return std::sqrt(l2 * l2 + grad_sq);
}

bool is_finite(const ScalarField& f) { return f.v.allFinite(); }

bool is_finite(const VectorField& u) { return is_finite(u.u1) && is_finite(u.u2); }

}  // namespace eulera
