#pragma once
// Time advancement of the coupled system by the fixed-point construction:
// advect the potential vorticity with a frozen velocity, re-solve the
// elliptic reconstruction, and iterate until successive velocity iterates
// agree in discrete H1.  The converged frozen velocity is the time-midpoint
// average (u(t) + u(t+dt))/2, giving a second-order step.  The alpha = 0
// branch shares the code path and swaps in the Euler stream solve.

#include "eulera/elliptic.hpp"
#include "eulera/transport.hpp"

#include <optional>
#include <vector>

namespace eulera {

struct AlphaState {
    Real t = 0;
    Real alpha = 0;  // 0 selects the Euler branch
    ScalarField q;   // potential vorticity (alpha > 0) or vorticity (alpha = 0)
    VectorField u;   // elliptic reconstruction of q
};

struct StepConfig {
    Real dt = 1e-3;
    Real picard_tol_rel = 1e-10;  // tolerance is picard_tol_rel * (1 + ||u||_H1)
    int picard_max_iter = 50;
    LimiterMode limiter = LimiterMode::Cell;
    InterpKind interp = InterpKind::Spectral;
    // Relaxation of the frozen-velocity update toward the time midpoint;
    // 1 applies the contraction map directly (see README notes).
    Real relaxation = 1.0;

    void validate() const;
};

struct StepStats {
    int picard_iters = 0;
    Real last_delta = 0;
};

struct TrajectorySample {
    Real t = 0;
    Real l2_u = 0, h1_u = 0, l2_q = 0, energy = 0;
    int picard_iters = 0;
};

struct Trajectory {
    std::vector<AlphaState> states;        // at sample times
    std::vector<TrajectorySample> series;  // same times
    Real max_q_ratio = 0;                  // max_t ||q(t)|| / ||q0||
    int max_picard_iters = 0;
};

/// v = u - alpha^2 lap(u).  Rejects alpha = 0 states.
VectorField compute_v(const AlphaState& s);

/// ||u||^2 + alpha^2 ||grad u||^2.
Real alpha_energy(const AlphaState& s);

class Stepper {
  public:
    Stepper(const Grid& g, Real alpha);

    /// Potential vorticity of a velocity field: curl(u - alpha^2 lap u).
    ScalarField potential_vorticity(const VectorField& u) const;

    /// Velocity from (potential) vorticity via the branch elliptic solve.
    VectorField reconstruct(const ScalarField& q) const;

    /// Canonical state from initial velocity: q0 = potential_vorticity(u0),
    /// u = reconstruct(q0) (drops any stream-incompatible part, see README).
    AlphaState state_from_velocity(const VectorField& u0) const;
    AlphaState state_from_q(const ScalarField& q0) const;

    /// One Picard step to t + dt.  Throws NumericalError when the inner
    /// iteration fails to contract within picard_max_iter (halve dt).
    AlphaState step(const AlphaState& s, const StepConfig& cfg, StepStats* stats = nullptr) const;

    /// Repeated steps to time T (last step shortened to land exactly);
    /// samples every `sample_stride` steps plus the initial and final state.
    Trajectory integrate(const AlphaState& s0, Real T, const StepConfig& cfg,
                         int sample_stride) const;

    Real alpha() const { return alpha_; }
    const Grid& grid() const { return *g_; }

  private:
    const Grid* g_;
    Real alpha_;
    std::optional<AlphaEllipticSolver> alpha_solver_;
    std::optional<EulerStreamSolver> euler_solver_;
};

}  // namespace eulera
