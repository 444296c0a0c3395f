#include "eulera/corrector.hpp"

#include "eulera/io.hpp"

#include <cmath>

namespace eulera {

Cutoff::Cutoff(Real delta_) : delta(delta_) {
    if (!(delta > 0 && delta < 0.5))
        throw ValidationError("Cutoff: delta must lie in (0, 1/2) so the collars stay disjoint");
}

Real Cutoff::xi(Real r) {
    if (r >= 1.0) return 0.0;
    if (r <= 0.0) return 1.0;
    // (1-r)^3 (1 + 3r + 6r^2) == 1 - 10 r^3 + 15 r^4 - 6 r^5
    const Real s = 1.0 - r;
    return s * s * s * (1.0 + 3.0 * r + 6.0 * r * r);
}

Real Cutoff::dxi(Real r) {
    if (r >= 1.0 || r <= 0.0) return 0.0;
    return -30.0 * r * r * (1.0 - r) * (1.0 - r);
}

Real Cutoff::d2xi(Real r) {
    if (r >= 1.0 || r <= 0.0) return 0.0;
    return -60.0 * r * (1.0 - r) * (1.0 - 2.0 * r);
}

Real Cutoff::dz(Real x2) const {
    const Real sign = (x2 <= 0.5) ? 1.0 : -1.0;  // d(rho)/dx2
    return dxi(rho(x2) / delta) / delta * sign;
}

Real Cutoff::d2z(Real x2) const {
    return d2xi(rho(x2) / delta) / (delta * delta);
}

namespace {

// u_b = z perp_grad(psi) + psi perp_grad-factor of z; all z-factors are
// closed form, psi derivatives are spectral.
struct ProductFields {
    VectorField u;
    ScalarField g11, g12, g21, g22;
};

ProductFields corrector_fields(const ScalarField& psi, const Cutoff& cut) {
    const Grid& g = *psi.grid;
    const ScalarField p1 = deriv_x1(psi);
    const ScalarField p2 = deriv_x2(psi);
    const ScalarField p11 = deriv_x1(p1);
    const ScalarField p12 = deriv_x2(p1);
    const ScalarField p22 = deriv_x2(p2);

    ProductFields out{VectorField(g), ScalarField(g), ScalarField(g), ScalarField(g),
                      ScalarField(g)};
    for (int j = 0; j < g.n2; ++j) {
        const Real z = cut.z(g.x2[j]);
        const Real zp = cut.dz(g.x2[j]);
        const Real zpp = cut.d2z(g.x2[j]);
        for (int i = 0; i < g.n1; ++i) {
            const Real ps = psi.v(i, j);
            out.u.u1.v(i, j) = -(z * p2.v(i, j) + zp * ps);
            out.u.u2.v(i, j) = z * p1.v(i, j);
            out.g11.v(i, j) = -(z * p12.v(i, j) + zp * p1.v(i, j));
            out.g12.v(i, j) = -(z * p22.v(i, j) + 2.0 * zp * p2.v(i, j) + zpp * ps);
            out.g21.v(i, j) = z * p11.v(i, j);
            out.g22.v(i, j) = zp * p1.v(i, j) + z * p12.v(i, j);
        }
    }
    return out;
}

}  // namespace

CorrectorBundle build_corrector(const ScalarField& psi_bar, const Cutoff& cutoff,
                                const ScalarField* psi_bar_dot) {
    const Grid& g = *psi_bar.grid;
    if (!is_finite(psi_bar)) throw ValidationError("build_corrector: non-finite stream function");

    const Real scale = 1.0 + psi_bar.v.cwiseAbs().maxCoeff();
    for (int i = 0; i < g.n1; ++i) {
        if (std::abs(psi_bar.v(i, 0)) > 1e-9 * scale ||
            std::abs(psi_bar.v(i, g.n2 - 1)) > 1e-9 * scale)
            throw ValidationError("build_corrector: psi_bar must vanish at the walls");
    }

    int in_collar = 0;
    for (int j = 0; j < g.n2; ++j)
        if (g.x2[j] < cutoff.delta) ++in_collar;  // lower collar; the grid is symmetric
    if (in_collar < 8)
        throw ValidationError("build_corrector: unresolved layer, only " +
                              std::to_string(in_collar) + " points inside the collar (need 8); "
                              "refine n2 or enlarge delta");

    CorrectorBundle b;
    b.points_in_collar = in_collar;
    b.rho = ScalarField(g);
    b.z = ScalarField(g);
    for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j) {
            b.rho.v(i, j) = Cutoff::rho(g.x2[j]);
            b.z.v(i, j) = cutoff.z(g.x2[j]);
        }

    ProductFields pf = corrector_fields(psi_bar, cutoff);
    b.u_b = std::move(pf.u);
    b.g11 = std::move(pf.g11);
    b.g12 = std::move(pf.g12);
    b.g21 = std::move(pf.g21);
    b.g22 = std::move(pf.g22);
    b.du_b_dt = psi_bar_dot ? corrector_fields(*psi_bar_dot, cutoff).u : VectorField(g);

    b.ub_l2 = l2_norm(b.u_b);
    const Real gsq = inner(b.g11, b.g11) + inner(b.g12, b.g12) + inner(b.g21, b.g21) +
                     inner(b.g22, b.g22);
    b.grad_ub_l2 = std::sqrt(std::max(0.0, gsq));

    Real linf = 0;
    ScalarField rho_g(g);
    Real rg_sq = 0;
    for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j) {
            const Real fro = std::sqrt(b.g11.v(i, j) * b.g11.v(i, j) +
                                       b.g12.v(i, j) * b.g12.v(i, j) +
                                       b.g21.v(i, j) * b.g21.v(i, j) +
                                       b.g22.v(i, j) * b.g22.v(i, j));
            const Real r = b.rho.v(i, j);
            linf = std::max(linf, r * r * fro);
            rg_sq += r * r * fro * fro * g.w2[j] * g.w1;
        }
    b.rho2_grad_ub_linf = linf;
    b.rho_grad_ub_l2 = std::sqrt(std::max(0.0, rg_sq));
    return b;
}

ScalingReport scaling_study(const ScalarField& psi_bar, const std::vector<Real>& deltas) {
    if (deltas.size() < 4)
        throw ValidationError("scaling_study: need at least 4 resolvable deltas");
    ScalingReport rep;
    for (Real d : deltas) {
        const Cutoff cut(d);
        const CorrectorBundle b = build_corrector(psi_bar, cut);
        rep.deltas.push_back(d);
        rep.ub_l2.push_back(b.ub_l2);
        rep.grad_ub_l2.push_back(b.grad_ub_l2);
        rep.rho2_grad_ub_linf.push_back(b.rho2_grad_ub_linf);
        rep.rho_grad_ub_l2.push_back(b.rho_grad_ub_l2);
    }
    Real vmax = 0;
    for (Real v : rep.ub_l2) vmax = std::max(vmax, v);
    if (vmax < 1e-14) {
        rep.degenerate = true;
        return rep;
    }
    rep.slope_ub = loglog_slope(rep.deltas, rep.ub_l2);
    rep.slope_grad_ub = loglog_slope(rep.deltas, rep.grad_ub_l2);
    rep.slope_rho2_grad_ub = loglog_slope(rep.deltas, rep.rho2_grad_ub_linf);
    rep.slope_rho_grad_ub = loglog_slope(rep.deltas, rep.rho_grad_ub_l2);
    return rep;
}

void ScalingReport::write_csv(const std::string& path) const {
    CsvWriter csv(path, {"delta", "ub_L2", "grad_ub_L2", "rho2_grad_ub_Linf", "rho_grad_ub_L2"});
    for (size_t i = 0; i < deltas.size(); ++i)
        csv.row({deltas[i], ub_l2[i], grad_ub_l2[i], rho2_grad_ub_linf[i], rho_grad_ub_l2[i]});
    csv.close();
}

void ScalingReport::write_svg(const std::string& path) const {
    std::vector<SvgSeries> series = {
        {"|u_b| (slope +1/2)", "#1f77b4", deltas, ub_l2},
        {"|grad u_b| (slope -1/2)", "#d62728", deltas, grad_ub_l2},
        {"|rho^2 grad u_b|_inf (slope +1)", "#2ca02c", deltas, rho2_grad_ub_linf},
        {"|rho grad u_b| (slope +1/2)", "#9467bd", deltas, rho_grad_ub_l2},
    };
    write_loglog_svg(path, "corrector scaling study", "delta", "functional", series);
}

Real delta_schedule(Real alpha, Real exponent) {
    if (!(alpha > 0 && alpha < 1)) throw ValidationError("delta_schedule: alpha must lie in (0,1)");
    if (!(exponent > 0 && exponent < 2))
        throw ValidationError("delta_schedule: exponent must lie in (0,2) so alpha^2/delta -> 0");
    return std::pow(alpha, exponent);
}

}  // namespace eulera
