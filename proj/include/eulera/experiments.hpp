#pragma once
// Desk-scale experiments: the alpha -> 0 convergence sweep against the
// Euler reference, the parallel-flow exact-solution verification, and the
// CSV/SVG report generation behind the CLI.

#include "eulera/initdata.hpp"
#include "eulera/stepper.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace eulera {

// ---------------------------------------------------------------- profiles

/// Analytic parallel profile phi(x2) with phi(0) = phi(1) = 0 and
/// closed-form derivatives.  Known names: "sin", "poiseuille", "zero".
struct ParallelProfile {
    std::string name;
    std::function<Real(Real)> phi, dphi, d2phi, d3phi;
};

ParallelProfile parallel_profile(const std::string& name);

/// Analytic stream functions for corrector studies and sweep data.
/// Known names: "quartic" x2^2(1-x2)^2, "parabola" x2(1-x2),
/// "sin" sin(pi x2)/pi, "cellular" sin(2 pi x1/L) sin^2(pi x2).
ScalarField named_stream(const Grid& g, const std::string& name);

/// Initial velocities: "cellular" (perp-gradient of the cellular stream),
/// "parallel-sin" (sin(pi x2), 0), "zero", or "file:PREFIX" reading
/// PREFIX_u1.eaf1 / PREFIX_u2.eaf1.
VectorField named_velocity(const Grid& g, const std::string& name);

// ---------------------------------------------------------- parallel flows

struct ParallelFlowCase {
    ParallelProfile profile;
    Real alpha = 0;  // 0 runs the Euler branch
};

/// p = -(phi^2 - alpha^2 (phi')^2)/2 with the spectral derivative of the
/// nodal profile; constant in x1 by construction.
ScalarField reconstruct_parallel_pressure(const ParallelFlowCase& c, const Grid& g);

struct ParallelReport {
    Real stationarity = 0;  // sup_t ||u(t) - u(0)|| / ||u(0)||
    Real residual_l2 = 0;   // steady momentum residual with closed-form pressure
    Real deriv_mismatch = 0;
    bool tail_warning = false;  // spectral derivatives disagree with closed form
    ScalarField pressure;

    std::string summary() const;
};

/// (a) integrates the system from the parallel datum and reports the drift,
/// (b) evaluates the steady momentum residual nodally, (c) reconstructs the
/// pressure (written to out_dir when given).
ParallelReport parallel_flow_verify(const ParallelFlowCase& c, const Grid& g, Real T, Real dt,
                                    const std::string& out_dir = "");

// ------------------------------------------------------------------ sweeps

struct SweepConfig {
    int n1 = 32, n2 = 64;
    Real L = 2.0 * M_PI;
    std::vector<Real> alphas = {0.2, 0.1, 0.05, 0.025};
    Real T = 1.0;
    Real dt = 1e-3;
    int stride = 20;  // sample every `stride` steps; >= 50 samples at defaults
    std::string u0_name = "cellular";
    std::string init_mode = "projection";  // or "mollify"
    int k_max = 8;
    int per_mode = 20;
    std::string out_dir;  // empty: no artifacts written
    int jobs = 1;
    bool measure_dt_floor = true;  // half-dt rerun of the smallest alpha
    StepConfig step;

    void validate() const;
};

struct ConvergenceRow {
    Real alpha = 0;
    Real sup_l2_diff = 0;     // sup_t ||u_alpha(t) - u_bar(t)||
    Real sup_alpha2_grad = 0; // sup_t alpha^2 ||grad u_alpha(t)||
    Real init_diff = 0;       // ||u0_alpha - u0|| (same quadrature as certify_E1)
    Real energy_drift = 0;    // max_t |E(t) - E(0)| / E(0)
    Real q_ratio = 0;         // max_t ||q(t)|| / ||q0||
    bool ok = false;
    std::string error;
};

struct SweepResult {
    std::vector<ConvergenceRow> rows;  // sorted by decreasing alpha
    Real dt_floor = 0;                 // half-dt refinement floor at smallest alpha
    E1Report e1;
    int successful = 0;
};

/// Runs the Euler reference plus one Euler-alpha trajectory per alpha from
/// the certified family, and assembles the convergence table.  Rows whose
/// trajectory fails carry the failure reason; fewer than 3 successful rows
/// is a failed experiment (NumericalError).
SweepResult run_sweep(const SweepConfig& cfg);

void write_sweep_outputs(const SweepConfig& cfg, const SweepResult& res);

/// Writes the sampled time series (t, l2_u, h1_u, l2_q, energy,
/// picard_iters) plus final-state EAF1 checkpoints.
void write_trajectory(const std::string& dir, const Trajectory& traj);

}  // namespace eulera
