#include "eulera/stepper.hpp"

#include <cmath>
#include <string>

namespace eulera {

void StepConfig::validate() const {
    if (!(dt > 0)) throw ValidationError("StepConfig: dt must be positive");
    if (!(picard_tol_rel > 0)) throw ValidationError("StepConfig: picard tolerance must be positive");
    if (picard_max_iter < 2) throw ValidationError("StepConfig: picard_max_iter must be >= 2");
    if (!(relaxation > 0.0 && relaxation <= 1.0))
        throw ValidationError("StepConfig: relaxation must lie in (0, 1]");
}

VectorField compute_v(const AlphaState& s) {
    if (!(s.alpha > 0)) throw ValidationError("compute_v: requires alpha > 0");
    const Real a2 = s.alpha * s.alpha;
    VectorField lap = laplacian(s.u);
    lap *= -a2;
    return s.u + lap;
}

Real alpha_energy(const AlphaState& s) {
    const Real l2 = l2_norm(s.u);
    Real grad_sq = 0;
    for (const ScalarField* c : {&s.u.u1, &s.u.u2}) {
        const ScalarField cx = deriv_x1(*c);
        const ScalarField cy = deriv_x2(*c);
        grad_sq += inner(cx, cx) + inner(cy, cy);
    }
    return l2 * l2 + s.alpha * s.alpha * grad_sq;
}

Stepper::Stepper(const Grid& g, Real alpha) : g_(&g), alpha_(alpha) {
    if (alpha < 0) throw ValidationError("Stepper: alpha must be nonnegative");
    if (alpha > 0)
        alpha_solver_.emplace(g, alpha);
    else
        euler_solver_.emplace(g);
}

ScalarField Stepper::potential_vorticity(const VectorField& u) const {
    if (alpha_ > 0) {
        const Real a2 = alpha_ * alpha_;
        VectorField lap = laplacian(u);
        lap *= -a2;
        return curl(u + lap);
    }
    return curl(u);
}

VectorField Stepper::reconstruct(const ScalarField& q) const {
    if (alpha_ > 0) return alpha_solver_->solve(q).u;
    return euler_solver_->solve(q).u;
}

AlphaState Stepper::state_from_velocity(const VectorField& u0) const {
    if (!is_finite(u0)) throw ValidationError("state_from_velocity: non-finite input");
    ScalarField q0 = potential_vorticity(u0);
    VectorField u = reconstruct(q0);
    return {0.0, alpha_, std::move(q0), std::move(u)};
}

AlphaState Stepper::state_from_q(const ScalarField& q0) const {
    if (!is_finite(q0)) throw ValidationError("state_from_q: non-finite input");
    VectorField u = reconstruct(q0);
    return {0.0, alpha_, q0, std::move(u)};
}

AlphaState Stepper::step(const AlphaState& s, const StepConfig& cfg, StepStats* stats) const {
    cfg.validate();
    AdvectionScheme scheme(*g_);
    scheme.interp = cfg.interp;
    scheme.limiter = cfg.limiter;

    const Real tol = cfg.picard_tol_rel * (1.0 + h1_norm(s.u));
    VectorField u_froz = s.u;
    ScalarField q_new;
    VectorField u_new;
    VectorField u_prev;
    bool have_prev = false;
    bool converged = false;
    int iters = 0;
    Real delta = 0;

    for (int it = 1; it <= cfg.picard_max_iter; ++it) {
        iters = it;
        q_new = advect(scheme, s.q, u_froz, cfg.dt);
        u_new = reconstruct(q_new);
        if (have_prev) {
            delta = h1_norm(u_new - u_prev);
            if (!std::isfinite(delta))
                throw NumericalError("picard_step: non-finite iterate at t=" + std::to_string(s.t));
            if (delta < tol) {
                converged = true;
                break;
            }
        }
        u_prev = u_new;
        have_prev = true;
        // Move the frozen velocity toward the time midpoint (u(t)+u_new)/2.
        VectorField mid = 0.5 * (s.u + u_new);
        u_froz = (1.0 - cfg.relaxation) * u_froz + cfg.relaxation * mid;
    }
    if (!converged)
        throw NumericalError("picard_step: no contraction within " +
                             std::to_string(cfg.picard_max_iter) + " iterations at t=" +
                             std::to_string(s.t) + " (last delta=" + std::to_string(delta) +
                             "); halve dt");
    if (stats) {
        stats->picard_iters = iters;
        stats->last_delta = delta;
    }
    return {s.t + cfg.dt, alpha_, std::move(q_new), std::move(u_new)};
}

Trajectory Stepper::integrate(const AlphaState& s0, Real T, const StepConfig& cfg,
                              int sample_stride) const {
    cfg.validate();
    if (T < 0) throw ValidationError("integrate: T must be nonnegative");
    if (sample_stride < 1) throw ValidationError("integrate: sample stride must be >= 1");

    Trajectory traj;
    const Real q0_norm = l2_norm(s0.q);
    auto sample = [&](const AlphaState& s, int iters) {
        TrajectorySample ts;
        ts.t = s.t;
        const NormReport un = norms(s.u);
        ts.l2_u = un.l2;
        ts.h1_u = std::sqrt(un.l2 * un.l2 + un.h1_semi * un.h1_semi);
        ts.l2_q = l2_norm(s.q);
        ts.energy = alpha_energy(s);
        ts.picard_iters = iters;
        traj.series.push_back(ts);
        traj.states.push_back(s);
        if (q0_norm > 0) traj.max_q_ratio = std::max(traj.max_q_ratio, ts.l2_q / q0_norm);
    };

    AlphaState s = s0;
    sample(s, 0);
    if (T == 0) return traj;

    const Real t_end = s0.t + T;
    int step_index = 0;
    StepStats st;
    while (s.t < t_end - 1e-13 * std::max(1.0, t_end)) {
        StepConfig local = cfg;
        const Real remaining = t_end - s.t;
        if (remaining < cfg.dt * (1.0 + 1e-12)) local.dt = remaining;
        try {
            s = step(s, local, &st);
        } catch (const NumericalError& e) {
            throw NumericalError(std::string(e.what()) + " [integration failed at t=" +
                                 std::to_string(s.t) + "]");
        }
        ++step_index;
        traj.max_picard_iters = std::max(traj.max_picard_iters, st.picard_iters);
        const bool at_end = !(s.t < t_end - 1e-13 * std::max(1.0, t_end));
        if (step_index % sample_stride == 0 || at_end) sample(s, st.picard_iters);
    }
    return traj;
}

}  // namespace eulera
