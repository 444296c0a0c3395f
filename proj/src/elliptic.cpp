#include "eulera/elliptic.hpp"

#include <cmath>
#include <string>

namespace eulera {

namespace {

// Solves the per-mode factorized systems against the complex mode rows of q
// and assembles the real nodal solution.  bc_rows lists the substituted rows
// whose right side must be zeroed.
ScalarField solve_modes(const Grid& g, const std::vector<Eigen::PartialPivLU<MatrixXd>>& lu,
                        const ScalarField& q, const std::vector<int>& bc_rows) {
    const MatrixXcd qm = to_modes(q);
    MatrixXcd phim = MatrixXcd::Zero(g.n1, g.n2);
    const int half = g.num_half_modes();

    MatrixXd rhs(g.n2, 2);
    for (int k = 0; k < half; ++k) {
        rhs.col(0) = qm.row(k).real().transpose();
        rhs.col(1) = qm.row(k).imag().transpose();
        for (int r : bc_rows) {
            rhs(r, 0) = 0.0;
            rhs(r, 1) = 0.0;
        }
        const MatrixXd sol = lu[k].solve(rhs);
        for (int j = 0; j < g.n2; ++j) phim(k, j) = Complex(sol(j, 0), sol(j, 1));
        if (k != 0 && k != g.n1 / 2)
            phim.row(g.n1 - k) = phim.row(k).conjugate();
    }
    return from_modes(g, phim);
}

void check_solvable(const Eigen::PartialPivLU<MatrixXd>& lu, int k, const char* what) {
    const Real rc = lu.rcond();
    if (!(rc > 1e-15))
        throw NumericalError(std::string(what) + ": singular per-mode system at mode k=" +
                             std::to_string(k) + " (rcond=" + std::to_string(rc) + ")");
}

}  // namespace

AlphaEllipticSolver::AlphaEllipticSolver(const Grid& g, Real alpha) : grid_(&g), alpha_(alpha) {
    if (!(alpha > 0)) throw ValidationError("AlphaEllipticSolver: alpha must be positive");
    const int half = g.num_half_modes();
    forward_.reserve(half);
    lu_.reserve(half);
    const MatrixXd I = MatrixXd::Identity(g.n2, g.n2);
    for (int k = 0; k < half; ++k) {
        const Real kap = g.kappa(k);
        const MatrixXd helm = g.d2sq - kap * kap * I;
        MatrixXd op = helm - alpha * alpha * (helm * helm);
        forward_.push_back(op);
        // Clamped conditions: phi and dphi/dx2 vanish at both walls.
        op.row(0) = I.row(0);
        op.row(1) = g.d2.row(0);
        op.row(g.n2 - 2) = g.d2.row(g.n2 - 1);
        op.row(g.n2 - 1) = I.row(g.n2 - 1);
        lu_.emplace_back(op);
        check_solvable(lu_.back(), k, "biot_savart_alpha");
    }
}

AlphaEllipticSolver::Result AlphaEllipticSolver::solve(const ScalarField& q) const {
    if (q.grid != grid_) throw ValidationError("biot_savart_alpha: field grid mismatch");
    if (!is_finite(q)) throw ValidationError("biot_savart_alpha: non-finite input");
    ScalarField phi = solve_modes(*grid_, lu_, q, {0, 1, grid_->n2 - 2, grid_->n2 - 1});
    VectorField u = perp_gradient(phi);
    return {std::move(phi), std::move(u)};
}

ScalarField AlphaEllipticSolver::apply_forward(const ScalarField& phi) const {
    if (phi.grid != grid_) throw ValidationError("apply_forward: field grid mismatch");
    const Grid& g = *grid_;
    const MatrixXcd pm = to_modes(phi);
    MatrixXcd qm = MatrixXcd::Zero(g.n1, g.n2);
    const int half = g.num_half_modes();
    for (int k = 0; k < half; ++k) {
        qm.row(k) = (forward_[k] * pm.row(k).transpose()).transpose();
        if (k != 0 && k != g.n1 / 2) qm.row(g.n1 - k) = qm.row(k).conjugate();
    }
    return from_modes(g, qm);
}

EulerStreamSolver::EulerStreamSolver(const Grid& g) : grid_(&g) {
    const int half = g.num_half_modes();
    lu_.reserve(half);
    const MatrixXd I = MatrixXd::Identity(g.n2, g.n2);
    for (int k = 0; k < half; ++k) {
        const Real kap = g.kappa(k);
        MatrixXd op = g.d2sq - kap * kap * I;
        op.row(0) = I.row(0);
        op.row(g.n2 - 1) = I.row(g.n2 - 1);
        lu_.emplace_back(op);
        check_solvable(lu_.back(), k, "euler_stream");
    }
}

EulerStreamSolver::Result EulerStreamSolver::solve(const ScalarField& omega) const {
    if (omega.grid != grid_) throw ValidationError("euler_stream: field grid mismatch");
    if (!is_finite(omega)) throw ValidationError("euler_stream: non-finite input");
    ScalarField psi = solve_modes(*grid_, lu_, omega, {0, grid_->n2 - 1});
    VectorField u = perp_gradient(psi);
    return {std::move(psi), std::move(u)};
}

}  // namespace eulera
