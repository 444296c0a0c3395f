#include "eulera/experiments.hpp"

#include "eulera/io.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

namespace eulera {

ParallelProfile parallel_profile(const std::string& name) {
    if (name == "sin")
        return {name, [](Real x) { return std::sin(M_PI * x); },
                [](Real x) { return M_PI * std::cos(M_PI * x); },
                [](Real x) { return -M_PI * M_PI * std::sin(M_PI * x); },
                [](Real x) { return -M_PI * M_PI * M_PI * std::cos(M_PI * x); }};
    if (name == "poiseuille")
        return {name, [](Real x) { return x * (1.0 - x); }, [](Real x) { return 1.0 - 2.0 * x; },
                [](Real) { return -2.0; }, [](Real) { return 0.0; }};
    if (name == "zero")
        return {name, [](Real) { return 0.0; }, [](Real) { return 0.0; },
                [](Real) { return 0.0; }, [](Real) { return 0.0; }};
    throw ValidationError("unknown parallel profile: " + name +
                          " (known: sin, poiseuille, zero)");
}

ScalarField named_stream(const Grid& g, const std::string& name) {
    if (name == "quartic")
        return from_function(g, [](Real, Real y) { return y * y * (1.0 - y) * (1.0 - y); });
    if (name == "parabola") return from_function(g, [](Real, Real y) { return y * (1.0 - y); });
    if (name == "sin")
        return from_function(g, [](Real, Real y) { return std::sin(M_PI * y) / M_PI; });
    if (name == "cellular") {
        const Real kap = 2.0 * M_PI / g.L;
        return from_function(g, [kap](Real x, Real y) {
            const Real s = std::sin(M_PI * y);
            return std::sin(kap * x) * s * s;
        });
    }
    throw ValidationError("unknown stream function: " + name +
                          " (known: quartic, parabola, sin, cellular)");
}

VectorField named_velocity(const Grid& g, const std::string& name) {
    if (name.rfind("file:", 0) == 0) {
        const std::string prefix = name.substr(5);
        ScalarField u1 = attach(g, read_eaf1(prefix + "_u1.eaf1"));
        ScalarField u2 = attach(g, read_eaf1(prefix + "_u2.eaf1"));
        return VectorField(std::move(u1), std::move(u2));
    }
    if (name == "cellular") return perp_gradient(named_stream(g, "cellular"));
    if (name == "parallel-sin")
        return VectorField(from_function(g, [](Real, Real y) { return std::sin(M_PI * y); }),
                           ScalarField(g));
    if (name == "zero") return VectorField(g);
    throw ValidationError("unknown initial velocity: " + name +
                          " (known: cellular, parallel-sin, zero, file:PREFIX)");
}

ScalarField reconstruct_parallel_pressure(const ParallelFlowCase& c, const Grid& g) {
    const ScalarField phi = from_function(g, [&](Real, Real y) { return c.profile.phi(y); });
    const ScalarField dphi = deriv_x2(phi);
    ScalarField p(g);
    const Real a2 = c.alpha * c.alpha;
    p.v = -0.5 * (phi.v.cwiseProduct(phi.v) - a2 * dphi.v.cwiseProduct(dphi.v));
    return p;
}

ParallelReport parallel_flow_verify(const ParallelFlowCase& c, const Grid& g, Real T, Real dt,
                                    const std::string& out_dir) {
    for (Real y : {0.0, 1.0})
        if (std::abs(c.profile.phi(y)) > 1e-12)
            throw ValidationError("parallel_flow_verify: profile must vanish at the walls");
    if (c.alpha < 0) throw ValidationError("parallel_flow_verify: alpha must be nonnegative");

    ParallelReport rep;

    // Spectral-vs-analytic derivative mismatch flags profiles that are not
    // smooth enough for the collocation derivative.
    const ScalarField phi = from_function(g, [&](Real, Real y) { return c.profile.phi(y); });
    const ScalarField d3 = deriv_x2(deriv_x2(deriv_x2(phi)));
    const ScalarField d3ref = from_function(g, [&](Real, Real y) { return c.profile.d3phi(y); });
    const Real d3scale = std::max(1.0, d3ref.v.cwiseAbs().maxCoeff());
    rep.deriv_mismatch = (d3 - d3ref).v.cwiseAbs().maxCoeff() / d3scale;
    rep.tail_warning = rep.deriv_mismatch > 1e-4;

    // (a) stationarity of the trajectory started from the parallel datum.
    const Real a2 = c.alpha * c.alpha;
    const ScalarField q0 = from_function(g, [&](Real, Real y) {
        return -(c.profile.dphi(y) - a2 * c.profile.d3phi(y));
    });
    Stepper stepper(g, c.alpha);
    const AlphaState s0 = stepper.state_from_q(q0);
    const Real u0n = l2_norm(s0.u);
    if (u0n > 0 && T > 0) {
        StepConfig cfg;
        cfg.dt = dt;
        const int steps = std::max(1, static_cast<int>(std::lround(T / dt)));
        const int stride = std::max(1, steps / 50);
        const Trajectory traj = stepper.integrate(s0, T, cfg, stride);
        Real sup = 0;
        for (const AlphaState& s : traj.states) sup = std::max(sup, l2_norm(s.u - s0.u));
        rep.stationarity = sup / u0n;
        if (!out_dir.empty()) {
            ensure_dir(out_dir);
            write_trajectory(out_dir, traj);
        }
    }

    // (b) steady momentum residual u.grad(v) + sum_j v_j grad(u_j) + grad(p)
    // on the literal parallel field with the closed-form pressure.
    const VectorField u(phi, ScalarField(g));
    VectorField lap = laplacian(u);
    lap *= -a2;
    const VectorField v = u + lap;
    const VectorField gv1 = gradient(v.u1), gv2 = gradient(v.u2);
    const VectorField gu1 = gradient(u.u1), gu2 = gradient(u.u2);
    rep.pressure = reconstruct_parallel_pressure(c, g);
    const VectorField gp = gradient(rep.pressure);
    VectorField resid(g);
    resid.u1.v = u.u1.v.cwiseProduct(gv1.u1.v) + u.u2.v.cwiseProduct(gv1.u2.v) +
                 v.u1.v.cwiseProduct(gu1.u1.v) + v.u2.v.cwiseProduct(gu2.u1.v) + gp.u1.v;
    resid.u2.v = u.u1.v.cwiseProduct(gv2.u1.v) + u.u2.v.cwiseProduct(gv2.u2.v) +
                 v.u1.v.cwiseProduct(gu1.u2.v) + v.u2.v.cwiseProduct(gu2.u2.v) + gp.u2.v;
    rep.residual_l2 = l2_norm(resid);

    if (!out_dir.empty()) {
        ensure_dir(out_dir);
        write_eaf1(out_dir + "/pressure.eaf1", rep.pressure);
    }
    return rep;
}

std::string ParallelReport::summary() const {
    std::ostringstream os;
    os << "parallel flow: stationarity sup_t|u-u0|/|u0| = " << stationarity
       << ", steady residual L2 = " << residual_l2;
    if (tail_warning)
        os << "\nwarning: spectral derivative tail mismatch " << deriv_mismatch
           << "; profile may not be C^2";
    return os.str();
}

void SweepConfig::validate() const {
    if (alphas.size() < 4) throw ValidationError("sweep: need an alpha ladder with >= 4 values");
    for (size_t i = 0; i < alphas.size(); ++i) {
        if (!(alphas[i] > 0)) throw ValidationError("sweep: alphas must be positive");
        if (i > 0 && !(alphas[i] < alphas[i - 1]))
            throw ValidationError("sweep: alpha ladder must be strictly decreasing");
    }
    if (!(T > 0)) throw ValidationError("sweep: T must be positive");
    if (!(dt > 0)) throw ValidationError("sweep: dt must be positive");
    if (stride < 1) throw ValidationError("sweep: stride must be >= 1");
    if (jobs < 1) throw ValidationError("sweep: jobs must be >= 1");
    if (init_mode != "projection" && init_mode != "mollify")
        throw ValidationError("sweep: init mode must be 'projection' or 'mollify'");
}

void write_trajectory(const std::string& dir, const Trajectory& traj) {
    CsvWriter csv(dir + "/series.csv", {"t", "l2_u", "h1_u", "l2_q", "energy", "picard_iters"});
    for (const TrajectorySample& s : traj.series)
        csv.row_mixed({fmt_full(s.t), fmt_full(s.l2_u), fmt_full(s.h1_u), fmt_full(s.l2_q),
                       fmt_full(s.energy), std::to_string(s.picard_iters)});
    csv.close();
    if (!traj.states.empty()) {
        const AlphaState& last = traj.states.back();
        write_eaf1(dir + "/final_q.eaf1", last.q);
        write_eaf1(dir + "/final_u1.eaf1", last.u.u1);
        write_eaf1(dir + "/final_u2.eaf1", last.u.u2);
    }
}

namespace {

struct RunOutput {
    Trajectory traj;
    bool ok = false;
    std::string error;
};

RunOutput run_trajectory(const Grid& g, Real alpha, const VectorField& u0, Real T,
                         const StepConfig& step, int stride) {
    RunOutput out;
    try {
        Stepper stepper(g, alpha);
        const AlphaState s0 = stepper.state_from_velocity(u0);
        out.traj = stepper.integrate(s0, T, step, stride);
        out.ok = true;
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    return out;
}

Real energy_drift_of(const Trajectory& traj) {
    if (traj.series.empty()) return 0;
    const Real e0 = traj.series.front().energy;
    if (!(e0 > 0)) return 0;
    Real drift = 0;
    for (const TrajectorySample& s : traj.series)
        drift = std::max(drift, std::abs(s.energy - e0) / e0);
    return drift;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const Grid g = make_grid(cfg.L, cfg.n1, cfg.n2);
    const VectorField u0 = named_velocity(g, cfg.u0_name);

    ApproximationFamily family;
    if (cfg.init_mode == "projection") {
        const EigenBasis basis = stokes_eigenbasis(g, cfg.k_max, cfg.per_mode);
        family = project_family(basis, u0, cfg.alphas);
    } else {
        const ScalarField omega = curl(u0);
        const ScalarField psi0 = EulerStreamSolver(g).solve(omega).psi;
        family = mollified_family(g, psi0, cfg.alphas);
    }

    SweepResult res;
    res.e1 = certify_E1(family);

    // Reference Euler trajectory plus one Euler-alpha trajectory per rung;
    // rows run concurrently when jobs > 1 and merge in ladder order.
    const int nrows = static_cast<int>(cfg.alphas.size());
    const int ntasks = nrows + 1 + (cfg.measure_dt_floor ? 1 : 0);
    std::vector<RunOutput> outputs(ntasks);

    StepConfig half_step = cfg.step;
    half_step.dt = 0.5 * cfg.step.dt;
    const int smallest = nrows - 1;

    auto task = [&](int idx) {
        if (idx < nrows)
            outputs[idx] = run_trajectory(g, cfg.alphas[idx], family.members[idx].u0a, cfg.T,
                                          cfg.step, cfg.stride);
        else if (idx == nrows)
            outputs[idx] = run_trajectory(g, 0.0, u0, cfg.T, cfg.step, cfg.stride);
        else
            outputs[idx] = run_trajectory(g, cfg.alphas[smallest], family.members[smallest].u0a,
                                          cfg.T, half_step, 2 * cfg.stride);
    };

    if (cfg.jobs <= 1) {
        for (int i = 0; i < ntasks; ++i) task(i);
    } else {
        std::atomic<int> next{0};
        auto worker = [&] {
            for (int i = next.fetch_add(1); i < ntasks; i = next.fetch_add(1)) task(i);
        };
        std::vector<std::thread> pool;
        const int nw = std::min(cfg.jobs, ntasks);
        pool.reserve(nw);
        for (int w = 0; w < nw; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    const RunOutput& ref = outputs[nrows];
    if (!ref.ok) throw NumericalError("sweep: Euler reference failed: " + ref.error);

    for (int i = 0; i < nrows; ++i) {
        ConvergenceRow row;
        row.alpha = cfg.alphas[i];
        row.init_diff = family.members[i].l2_diff;
        const RunOutput& out = outputs[i];
        if (!out.ok) {
            row.error = out.error;
            res.rows.push_back(row);
            continue;
        }
        if (out.traj.states.size() != ref.traj.states.size())
            throw NumericalError("sweep: sample times misaligned between rows");
        Real sup_diff = 0, sup_grad = 0;
        for (size_t s = 0; s < out.traj.states.size(); ++s) {
            sup_diff = std::max(sup_diff, l2_norm(out.traj.states[s].u - ref.traj.states[s].u));
            const Real h1 = out.traj.series[s].h1_u, l2 = out.traj.series[s].l2_u;
            sup_grad = std::max(sup_grad, std::sqrt(std::max(0.0, h1 * h1 - l2 * l2)));
        }
        row.sup_l2_diff = sup_diff;
        row.sup_alpha2_grad = row.alpha * row.alpha * sup_grad;
        row.energy_drift = energy_drift_of(out.traj);
        row.q_ratio = out.traj.max_q_ratio;
        row.ok = true;
        ++res.successful;
        res.rows.push_back(row);
    }

    if (cfg.measure_dt_floor) {
        const RunOutput& half = outputs[nrows + 1];
        const RunOutput& base = outputs[smallest];
        if (half.ok && base.ok && half.traj.states.size() == base.traj.states.size()) {
            Real floor = 0;
            for (size_t s = 0; s < base.traj.states.size(); ++s)
                floor = std::max(floor, l2_norm(base.traj.states[s].u - half.traj.states[s].u));
            res.dt_floor = floor;
        }
    }

    if (!cfg.out_dir.empty()) {
        write_sweep_outputs(cfg, res);
        ensure_dir(cfg.out_dir + "/reference");
        write_trajectory(cfg.out_dir + "/reference", ref.traj);
        for (int i = 0; i < nrows; ++i) {
            if (!outputs[i].ok) continue;
            std::ostringstream dir;
            dir << cfg.out_dir << "/alpha_" << fmt_full(cfg.alphas[i]);
            ensure_dir(dir.str());
            write_trajectory(dir.str(), outputs[i].traj);
        }
    }

    if (res.successful < 3)
        throw NumericalError("sweep: failed experiment, only " + std::to_string(res.successful) +
                             " successful rows (need >= 3)");
    return res;
}

void write_sweep_outputs(const SweepConfig& cfg, const SweepResult& res) {
    ensure_dir(cfg.out_dir);
    CsvWriter csv(cfg.out_dir + "/sweep.csv",
                  {"alpha", "sup_L2_diff", "sup_alpha2_gradnorm", "init_diff", "energy_drift",
                   "q_ratio"});
    for (const ConvergenceRow& r : res.rows)
        csv.row({r.alpha, r.sup_l2_diff, r.sup_alpha2_grad, r.init_diff, r.energy_drift,
                 r.q_ratio});
    csv.close();

    std::vector<Real> alphas, diffs, grads;
    for (const ConvergenceRow& r : res.rows) {
        if (!r.ok) continue;
        alphas.push_back(r.alpha);
        diffs.push_back(r.sup_l2_diff);
        grads.push_back(r.sup_alpha2_grad);
    }
    write_loglog_svg(cfg.out_dir + "/sweep.svg", "alpha -> 0 convergence", "alpha",
                     "sup over t",
                     {{"sup_t |u_a - u_bar|", "#1f77b4", alphas, diffs},
                      {"sup_t alpha^2 |grad u_a|", "#d62728", alphas, grads}});

    std::ofstream rep(cfg.out_dir + "/e1_report.txt", std::ios::trunc);
    rep << res.e1.summary();
    rep << "dt refinement floor at alpha=" << fmt_full(cfg.alphas.back()) << ": "
        << fmt_full(res.dt_floor) << "\n";
}

}  // namespace eulera
