#pragma once
// Boundary-layer corrector u_b = perp_grad(z psi_bar) with the cutoff
// z = xi(rho/delta), rho = distance to the nearest wall.  The perp-gradient
// is expanded by the product rule with closed-form cutoff derivatives, so
// u_b and grad(u_b) vanish identically outside the delta-collar and the
// wall trace of (u_bar - u_b) is exactly zero.  The four functionals of the
// layer estimates and their delta-scaling study live here.

#include "eulera/field.hpp"
#include "eulera/stats.hpp"

#include <string>
#include <vector>

namespace eulera {

/// Quintic cutoff xi(r) = (1-r)^3 (1 + 3r + 6r^2) on [0,1], zero beyond:
/// xi(0) = 1, xi' and xi'' vanish at both ends of the support.
struct Cutoff {
    Real delta = 0;

    explicit Cutoff(Real delta_);

    static Real xi(Real r);
    static Real dxi(Real r);
    static Real d2xi(Real r);

    /// Wall distance on the unit channel.
    static Real rho(Real x2) { return std::min(x2, 1.0 - x2); }

    Real z(Real x2) const { return xi(rho(x2) / delta); }
    Real dz(Real x2) const;   // d/dx2 of z
    Real d2z(Real x2) const;  // d^2/dx2^2 of z
};

struct CorrectorBundle {
    ScalarField rho;
    ScalarField z;
    VectorField u_b;
    VectorField du_b_dt;  // corrector of d(psi_bar)/dt, zero when not supplied

    // grad(u_b) entries: g11 = d1 u_b1, g12 = d2 u_b1, g21 = d1 u_b2, g22 = d2 u_b2
    ScalarField g11, g12, g21, g22;

    Real ub_l2 = 0;
    Real grad_ub_l2 = 0;
    Real rho2_grad_ub_linf = 0;
    Real rho_grad_ub_l2 = 0;
    int points_in_collar = 0;
};

/// Builds the bundle.  Requires psi_bar to vanish at the walls, delta in
/// (0, 1/2), and at least 8 collocation points inside each collar.
CorrectorBundle build_corrector(const ScalarField& psi_bar, const Cutoff& cutoff,
                                const ScalarField* psi_bar_dot = nullptr);

struct ScalingReport {
    std::vector<Real> deltas;
    std::vector<Real> ub_l2, grad_ub_l2, rho2_grad_ub_linf, rho_grad_ub_l2;
    Real slope_ub = 0, slope_grad_ub = 0, slope_rho2_grad_ub = 0, slope_rho_grad_ub = 0;
    bool degenerate = false;  // all functionals vanish; slopes undefined

    void write_csv(const std::string& path) const;
    void write_svg(const std::string& path) const;
};

/// Log-log regression of the four functionals against a dyadic delta
/// ladder.  Requires at least 4 resolvable deltas.
ScalingReport scaling_study(const ScalarField& psi_bar, const std::vector<Real>& deltas);

/// delta(alpha) = alpha^exponent; any exponent in (0,2) satisfies both
/// limits delta -> 0 and alpha^2/delta -> 0.
Real delta_schedule(Real alpha, Real exponent = 1.0);

}  // namespace eulera
