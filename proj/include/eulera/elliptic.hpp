#pragma once
// Per-Fourier-mode elliptic solvers on the channel.
//
// AlphaEllipticSolver inverts the clamped fourth-order problem
//     lap(phi) - alpha^2 lap^2(phi) = q,   phi = dphi/dn = 0 at the walls,
// which defines the Biot-Savart-alpha map q -> u = perp_grad(phi).
// EulerStreamSolver inverts the Dirichlet Poisson problem
//     lap(psi) = omega,   psi = 0 at the walls,
// the plain Euler stream-function solve.
//
// Every x1 mode k decouples into an n2 x n2 real system in x2; boundary
// conditions are imposed by row substitution so they hold to machine
// precision after the solve.  Factorizations are cached per (grid, alpha);
// solvers are immutable after construction and safe to share.

#include "eulera/field.hpp"

#include <memory>
#include <vector>

namespace eulera {

class AlphaEllipticSolver {
  public:
    AlphaEllipticSolver(const Grid& g, Real alpha);

    struct Result {
        ScalarField phi;
        VectorField u;
    };

    /// Solves the clamped problem for phi and returns u = perp_grad(phi).
    Result solve(const ScalarField& q) const;

    /// Applies the unmodified forward operator lap - alpha^2 lap^2 per mode,
    /// algebraically identical to the solver matrix interior rows.
    ScalarField apply_forward(const ScalarField& phi) const;

    Real alpha() const { return alpha_; }
    const Grid& grid() const { return *grid_; }

  private:
    const Grid* grid_;
    Real alpha_;
    std::vector<MatrixXd> forward_;                           // per mode, unmodified
    std::vector<Eigen::PartialPivLU<MatrixXd>> lu_;           // per mode, BC rows substituted
};

class EulerStreamSolver {
  public:
    explicit EulerStreamSolver(const Grid& g);

    struct Result {
        ScalarField psi;
        VectorField u;
    };

    /// Solves lap(psi) = omega with psi = 0 at the walls; u = perp_grad(psi).
    Result solve(const ScalarField& omega) const;

    const Grid& grid() const { return *grid_; }

  private:
    const Grid* grid_;
    std::vector<Eigen::PartialPivLU<MatrixXd>> lu_;
};

}  // namespace eulera
