// Command-line driver: trajectories, sweeps, eigenbasis construction,
// family projection/certification, corrector scaling studies, parallel-flow
// verification, and norm reports of EAF1 files.
//
// Exit codes: 0 success, 1 validation/usage error, 2 numerical failure.

#include "eulera/experiments.hpp"
#include "eulera/corrector.hpp"
#include "eulera/io.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace eulera;

struct GridArgs {
    std::string grid = "32x64";
    double length = 2.0 * M_PI;

    void attach(CLI::App* app) {
        app->add_option("--grid", grid, "collocation sizes N1xN2")->capture_default_str();
        app->add_option("--length", length, "channel period L")->capture_default_str();
    }

    Grid make() const {
        const auto x = grid.find('x');
        if (x == std::string::npos)
            throw ValidationError("--grid expects N1xN2, e.g. 32x64");
        const int n1 = std::stoi(grid.substr(0, x));
        const int n2 = std::stoi(grid.substr(x + 1));
        return make_grid(length, n1, n2);
    }
};

std::vector<Real> parse_ladder(const std::string& csv, const char* what) {
    std::vector<Real> out;
    std::string tok;
    std::istringstream is(csv);
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    if (out.empty()) throw ValidationError(std::string(what) + ": empty list");
    return out;
}

int cmd_solve(const GridArgs& ga, const std::string& u0, double alpha, double T, double dt,
              int stride, const std::string& out) {
    const Grid g = ga.make();
    Stepper stepper(g, alpha);
    const AlphaState s0 = stepper.state_from_velocity(named_velocity(g, u0));
    StepConfig cfg;
    cfg.dt = dt;
    const Trajectory traj = stepper.integrate(s0, T, cfg, stride);
    if (!out.empty()) {
        ensure_dir(out);
        write_trajectory(out, traj);
    }
    const TrajectorySample& last = traj.series.back();
    std::cout << "t=" << last.t << " l2_u=" << last.l2_u << " l2_q=" << last.l2_q
              << " energy=" << last.energy << " max_q_ratio=" << traj.max_q_ratio
              << " max_picard_iters=" << traj.max_picard_iters << "\n";
    return 0;
}

int cmd_sweep(const SweepConfig& cfg) {
    const SweepResult res = run_sweep(cfg);
    std::cout << res.e1.summary();
    std::cout << "alpha          sup|u_a-u_bar|   sup a^2|grad u_a|   init_diff      "
                 "energy_drift   q_ratio\n";
    for (const ConvergenceRow& r : res.rows) {
        if (r.ok)
            std::printf("%-14.6g %-16.8g %-19.8g %-14.8g %-14.6g %.9f\n", r.alpha, r.sup_l2_diff,
                        r.sup_alpha2_grad, r.init_diff, r.energy_drift, r.q_ratio);
        else
            std::printf("%-14.6g FAILED: %s\n", r.alpha, r.error.c_str());
    }
    std::cout << "dt refinement floor (smallest alpha, half-dt rerun): " << res.dt_floor << "\n";
    return 0;
}

int cmd_eigen(const GridArgs& ga, int kmax, int per_mode, const std::string& out) {
    const Grid g = ga.make();
    const EigenBasis basis = stokes_eigenbasis(g, kmax, per_mode);
    std::cout << "eigenpairs: " << basis.pairs.size() << " (rejected " << basis.rejected
              << "), lambda1=" << basis.lambda1()
              << ", gramian residual=" << basis.gramian_residual << "\n";
    const size_t show = std::min<size_t>(10, basis.pairs.size());
    for (size_t j = 0; j < show; ++j)
        std::cout << "  j=" << j + 1 << " k=" << basis.pairs[j].k
                  << " lambda=" << basis.pairs[j].lambda
                  << " residual=" << basis.pairs[j].residual << "\n";
    if (!out.empty()) save_eigenbasis(basis, out);
    return 0;
}

int cmd_project(const GridArgs& ga, const std::string& u0_name, const std::string& alphas_csv,
                const std::string& mode, int kmax, int per_mode, const std::string& out) {
    const Grid g = ga.make();
    const VectorField u0 = named_velocity(g, u0_name);
    const std::vector<Real> alphas = parse_ladder(alphas_csv, "--alphas");
    ApproximationFamily fam;
    if (mode == "projection") {
        const EigenBasis basis = stokes_eigenbasis(g, kmax, per_mode);
        fam = project_family(basis, u0, alphas);
    } else if (mode == "mollify") {
        const ScalarField psi0 = EulerStreamSolver(g).solve(curl(u0)).psi;
        fam = mollified_family(g, psi0, alphas);
    } else {
        throw ValidationError("--mode must be projection or mollify");
    }
    const E1Report rep = certify_E1(fam);
    std::cout << rep.summary();
    if (!out.empty()) {
        ensure_dir(out);
        CsvWriter csv(out + "/family.csv", {"alpha", "m", "wall_max", "l2_diff", "grad", "h3"});
        for (const FamilyMember& m : fam.members)
            csv.row({m.alpha, static_cast<Real>(m.m), m.wall_max, m.l2_diff, m.report.h1_semi,
                     m.report.h3});
        csv.close();
        for (const FamilyMember& m : fam.members) {
            write_eaf1(out + "/u0a_" + fmt_full(m.alpha) + "_u1.eaf1", m.u0a.u1);
            write_eaf1(out + "/u0a_" + fmt_full(m.alpha) + "_u2.eaf1", m.u0a.u2);
        }
    }
    return rep.pass() ? 0 : 2;
}

int cmd_corrector(const GridArgs& ga, const std::string& psi_name, const std::string& deltas_csv,
                  const std::string& out) {
    const Grid g = ga.make();
    const ScalarField psi = named_stream(g, psi_name);
    const std::vector<Real> deltas = parse_ladder(deltas_csv, "--deltas");
    const ScalingReport rep = scaling_study(psi, deltas);
    if (rep.degenerate) {
        std::cout << "degenerate study: all corrector functionals vanish, slopes undefined\n";
    } else {
        std::cout << "slopes: |u_b| " << rep.slope_ub << "  |grad u_b| " << rep.slope_grad_ub
                  << "  |rho^2 grad u_b|_inf " << rep.slope_rho2_grad_ub << "  |rho grad u_b| "
                  << rep.slope_rho_grad_ub << "\n";
    }
    if (!out.empty()) {
        ensure_dir(out);
        rep.write_csv(out + "/corrector.csv");
        rep.write_svg(out + "/corrector.svg");
    }
    return 0;
}

int cmd_parallel(const GridArgs& ga, const std::string& profile, double alpha, double T,
                 double dt, const std::string& out) {
    const Grid g = ga.make();
    ParallelFlowCase pc{parallel_profile(profile), alpha};
    const ParallelReport rep = parallel_flow_verify(pc, g, T, dt, out);
    std::cout << rep.summary() << "\n";
    return 0;
}

int cmd_norms(const std::string& path) {
    const RawField raw = read_eaf1(path);
    const Grid g = make_grid(raw.L, raw.n1, raw.n2);
    const ScalarField f = attach(g, raw);
    const NormReport r = norms(f);
    std::cout << "l2=" << fmt_full(r.l2) << " h1_semi=" << fmt_full(r.h1_semi)
              << " h3=" << fmt_full(r.h3) << " linf=" << fmt_full(r.linf) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"eulera: 2D Euler-alpha / Euler channel solver and experiment driver"};
    app.require_subcommand(1);

    GridArgs ga;
    std::string u0 = "cellular", out, profile = "sin", psi_name = "quartic";
    std::string alphas_csv = "0.2,0.1,0.05,0.025", deltas_csv = "0.125,0.0625,0.03125,0.015625";
    std::string mode = "projection", eaf_path;
    double alpha = 0.1, T = 1.0, dt = 1e-3;
    int stride = 20, kmax = 8, per_mode = 20;

    auto* solve = app.add_subcommand("solve", "integrate one trajectory (alpha >= 0)");
    ga.attach(solve);
    solve->add_option("--u0", u0, "initial velocity")->capture_default_str();
    solve->add_option("--alpha", alpha)->capture_default_str();
    solve->add_option("--T", T)->capture_default_str();
    solve->add_option("--dt", dt)->capture_default_str();
    solve->add_option("--stride", stride)->capture_default_str();
    solve->add_option("--out", out, "output directory");

    SweepConfig sc;
    auto* sweep = app.add_subcommand("sweep", "alpha -> 0 convergence sweep");
    std::string sweep_grid = "32x64", sweep_alphas = "0.2,0.1,0.05,0.025";
    sweep->set_config("--config", "", "key=value config file; CLI flags override");
    sweep->add_option("--grid", sweep_grid)->capture_default_str();
    sweep->add_option("--length", sc.L)->capture_default_str();
    sweep->add_option("--alphas", sweep_alphas)->capture_default_str();
    sweep->add_option("--T", sc.T)->capture_default_str();
    sweep->add_option("--dt", sc.step.dt)->capture_default_str();
    sweep->add_option("--stride", sc.stride)->capture_default_str();
    sweep->add_option("--u0", sc.u0_name)->capture_default_str();
    sweep->add_option("--init", sc.init_mode, "projection or mollify")->capture_default_str();
    sweep->add_option("--kmax", sc.k_max)->capture_default_str();
    sweep->add_option("--per-mode", sc.per_mode)->capture_default_str();
    sweep->add_option("--out", sc.out_dir, "output directory");
    sweep->add_option("--jobs", sc.jobs, "rows run concurrently")->capture_default_str();

    auto* eigen = app.add_subcommand("eigen", "Stokes eigenbasis + manifest");
    ga.attach(eigen);
    eigen->add_option("--kmax", kmax)->capture_default_str();
    eigen->add_option("--per-mode", per_mode)->capture_default_str();
    eigen->add_option("--out", out, "output directory");

    auto* project = app.add_subcommand("project", "approximation family + E1 certification");
    ga.attach(project);
    project->add_option("--u0", u0)->capture_default_str();
    project->add_option("--alphas", alphas_csv)->capture_default_str();
    project->add_option("--mode", mode, "projection or mollify")->capture_default_str();
    project->add_option("--kmax", kmax)->capture_default_str();
    project->add_option("--per-mode", per_mode)->capture_default_str();
    project->add_option("--out", out, "output directory");

    auto* corrector = app.add_subcommand("corrector", "boundary-layer scaling study");
    ga.attach(corrector);
    corrector->add_option("--psi", psi_name, "stream function name")->capture_default_str();
    corrector->add_option("--deltas", deltas_csv)->capture_default_str();
    corrector->add_option("--out", out, "output directory");

    auto* parallel = app.add_subcommand("parallel", "parallel-flow verification");
    ga.attach(parallel);
    parallel->add_option("--profile", profile, "sin, poiseuille or zero")->capture_default_str();
    parallel->add_option("--alpha", alpha)->capture_default_str();
    parallel->add_option("--T", T)->capture_default_str();
    parallel->add_option("--dt", dt)->capture_default_str();
    parallel->add_option("--out", out, "output directory");

    auto* nrm = app.add_subcommand("norms", "norm report of an EAF1 field file");
    nrm->add_option("file", eaf_path, "EAF1 path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) return cmd_solve(ga, u0, alpha, T, dt, stride, out);
        if (sweep->parsed()) {
            const auto x = sweep_grid.find('x');
            if (x == std::string::npos) throw ValidationError("--grid expects N1xN2");
            sc.n1 = std::stoi(sweep_grid.substr(0, x));
            sc.n2 = std::stoi(sweep_grid.substr(x + 1));
            sc.alphas = parse_ladder(sweep_alphas, "--alphas");
            return cmd_sweep(sc);
        }
        if (eigen->parsed()) return cmd_eigen(ga, kmax, per_mode, out);
        if (project->parsed())
            return cmd_project(ga, u0, alphas_csv, mode, kmax, per_mode, out);
        if (corrector->parsed()) return cmd_corrector(ga, psi_name, deltas_csv, out);
        if (parallel->parsed()) return cmd_parallel(ga, profile, alpha, T, dt, out);
        if (nrm->parsed()) return cmd_norms(eaf_path);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
