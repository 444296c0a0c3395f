#include "eulera/initdata.hpp"

#include "eulera/corrector.hpp"
#include "eulera/io.hpp"
#include "eulera/stats.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace eulera {

namespace {

struct Candidate {
    Real lambda;
    Real residual;
    VectorXd profile;  // full n2-length profile including wall zeros
};

// Shear branch: -w'' = lambda w with Dirichlet ends, solved on the
// interior nodes.
std::vector<Candidate> shear_candidates(const Grid& g, Real residual_filter, int& rejected) {
    const int ni = g.n2 - 2;
    const MatrixXd A = -g.d2sq.block(1, 1, ni, ni);
    Eigen::EigenSolver<MatrixXd> es(A);
    if (es.info() != Eigen::Success) throw NumericalError("stokes_eigenbasis: k=0 eigensolver failed");

    std::vector<Candidate> out;
    for (int i = 0; i < ni; ++i) {
        const Complex lam = es.eigenvalues()[i];
        if (!(lam.real() > 0) || std::abs(lam.imag()) > 1e-8 * std::max(1.0, std::abs(lam.real()))) {
            ++rejected;
            continue;
        }
        VectorXcd vc = es.eigenvectors().col(i);
        int imax = 0;
        vc.cwiseAbs().maxCoeff(&imax);
        const Complex phase = vc[imax] / std::abs(vc[imax]);
        VectorXd v = (vc * std::conj(phase)).real();

        const Real lamr = lam.real();
        const Real res = (A * v - lamr * v).norm() / (lamr * v.norm());
        if (res > residual_filter) {
            ++rejected;
            continue;
        }
        VectorXd full = VectorXd::Zero(g.n2);
        full.segment(1, ni) = v;
        if (full[g.n2 / 2] < 0) full = -full;
        out.push_back({lamr, res, std::move(full)});
    }
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
        return a.lambda < b.lambda;
    });
    return out;
}

// Stream-form branch for k != 0: (D^2-k^2)^2 psi = -lambda (D^2-k^2) psi
// with clamped walls imposed by row substitution; the pencil's substituted
// rows emit infinite eigenvalues which the beta filter discards.
std::vector<Candidate> stream_candidates(const Grid& g, Real kap, Real residual_filter,
                                         int& rejected) {
    const int n = g.n2;
    const MatrixXd I = MatrixXd::Identity(n, n);
    const MatrixXd helm = g.d2sq - kap * kap * I;
    const MatrixXd Araw = helm * helm;
    const MatrixXd Braw = -helm;

    MatrixXd A = Araw, B = Braw;
    A.row(0) = I.row(0);
    A.row(1) = g.d2.row(0);
    A.row(n - 2) = g.d2.row(n - 1);
    A.row(n - 1) = I.row(n - 1);
    B.row(0).setZero();
    B.row(1).setZero();
    B.row(n - 2).setZero();
    B.row(n - 1).setZero();

    Eigen::GeneralizedEigenSolver<MatrixXd> ges;
    ges.compute(A, B, true);
    if (ges.info() != Eigen::Success)
        throw NumericalError("stokes_eigenbasis: QZ failed at kappa=" + std::to_string(kap));

    const int ni = n - 4;
    std::vector<Candidate> out;
    for (int i = 0; i < n; ++i) {
        const Complex ac = ges.alphas()[i];
        const Real bt = ges.betas()[i];
        if (std::abs(bt) <= 1e-12 * (1.0 + std::abs(ac))) {
            ++rejected;
            continue;
        }
        const Complex lam = ac / bt;
        if (!(lam.real() > 0) || std::abs(lam.imag()) > 1e-8 * std::max(1.0, std::abs(lam.real()))) {
            ++rejected;
            continue;
        }
        VectorXcd vc = ges.eigenvectors().col(i);
        int imax = 0;
        vc.cwiseAbs().maxCoeff(&imax);
        const Complex phase = vc[imax] / std::abs(vc[imax]);
        VectorXd v = (vc * std::conj(phase)).real();
        if (v.norm() == 0) {
            ++rejected;
            continue;
        }

        const Real lamr = lam.real();
        const VectorXd lhs = (Araw * v - lamr * (Braw * v)).segment(2, ni);
        const VectorXd rhs = (lamr * (Braw * v)).segment(2, ni);
        const Real res = lhs.norm() / std::max(rhs.norm(), 1e-300);
        if (res > residual_filter) {
            ++rejected;
            continue;
        }
        if (v[n / 2] < 0) v = -v;
        out.push_back({lamr, res, std::move(v)});
    }
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
        return a.lambda < b.lambda;
    });
    // Conjugate QZ pairs duplicate real eigenpairs; keep one of each.
    std::vector<Candidate> dedup;
    for (auto& c : out) {
        if (!dedup.empty()) {
            const Candidate& p = dedup.back();
            const Real close = std::abs(c.lambda - p.lambda) / std::max(1.0, c.lambda);
            const Real par = std::abs(c.profile.dot(p.profile)) / (c.profile.norm() * p.profile.norm());
            if (close < 1e-8 && par > 1.0 - 1e-6) continue;
        }
        dedup.push_back(std::move(c));
    }
    return dedup;
}

}  // namespace

Real EigenBasis::lambda1() const {
    if (pairs.empty()) throw ValidationError("eigenbasis is empty");
    return pairs.front().lambda;
}

EigenBasis stokes_eigenbasis(const Grid& g, int k_max, int per_mode_count, Real residual_filter) {
    if (k_max < 0 || k_max >= g.n1 / 2)
        throw ValidationError("stokes_eigenbasis: require 0 <= k_max < n1/2");
    if (per_mode_count < 1 || per_mode_count >= g.n2 - 4)
        throw ValidationError("stokes_eigenbasis: require 1 <= per_mode_count < n2 - 4");

    EigenBasis basis;
    basis.grid = &g;

    {
        auto cands = shear_candidates(g, residual_filter, basis.rejected);
        const int take = std::min<int>(per_mode_count, cands.size());
        for (int i = 0; i < take; ++i) {
            EigenPair p;
            p.lambda = cands[i].lambda;
            p.k = 0;
            p.phase = 0;
            p.residual = cands[i].residual;
            p.profile = cands[i].profile;
            ScalarField u1(g);
            for (int r = 0; r < g.n1; ++r) u1.v.row(r) = cands[i].profile.transpose();
            p.w = VectorField(std::move(u1), ScalarField(g));
            const Real nrm = l2_norm(p.w);
            if (nrm <= 0) continue;
            p.w *= 1.0 / nrm;
            basis.pairs.push_back(std::move(p));
        }
    }

    for (int k = 1; k <= k_max; ++k) {
        const Real kap = g.kappa(k);
        auto cands = stream_candidates(g, kap, residual_filter, basis.rejected);
        const int take = std::min<int>(per_mode_count, cands.size());
        for (int i = 0; i < take; ++i) {
            for (int phase = 0; phase < 2; ++phase) {
                EigenPair p;
                p.lambda = cands[i].lambda;
                p.k = k;
                p.phase = phase;
                p.residual = cands[i].residual;
                p.profile = cands[i].profile;
                ScalarField psi(g);
                for (int r = 0; r < g.n1; ++r) {
                    const Real c = (phase == 0) ? std::cos(kap * g.x1[r]) : std::sin(kap * g.x1[r]);
                    psi.v.row(r) = c * cands[i].profile.transpose();
                }
                p.w = perp_gradient(psi);
                const Real nrm = l2_norm(p.w);
                if (nrm <= 0) continue;
                p.w *= 1.0 / nrm;
                basis.pairs.push_back(std::move(p));
            }
        }
    }

    std::sort(basis.pairs.begin(), basis.pairs.end(), [](const EigenPair& a, const EigenPair& b) {
        if (a.lambda != b.lambda) return a.lambda < b.lambda;
        if (a.k != b.k) return a.k < b.k;
        return a.phase < b.phase;
    });

    Real gmax = 0;
    for (size_t i = 0; i < basis.pairs.size(); ++i)
        for (size_t j = i; j < basis.pairs.size(); ++j) {
            const Real gij = inner(basis.pairs[i].w, basis.pairs[j].w);
            gmax = std::max(gmax, std::abs(gij - (i == j ? 1.0 : 0.0)));
        }
    basis.gramian_residual = gmax;
    return basis;
}

void save_eigenbasis(const EigenBasis& basis, const std::string& dir) {
    ensure_dir(dir);
    CsvWriter manifest(dir + "/manifest.csv", {"j", "k", "lambda", "residual"});
    char name[64];
    for (size_t j = 0; j < basis.pairs.size(); ++j) {
        const EigenPair& p = basis.pairs[j];
        manifest.row_mixed({std::to_string(j + 1), std::to_string(p.k), fmt_full(p.lambda),
                            fmt_full(p.residual)});
        std::snprintf(name, sizeof(name), "/w%04zu_u1.eaf1", j + 1);
        write_eaf1(dir + name, p.w.u1);
        std::snprintf(name, sizeof(name), "/w%04zu_u2.eaf1", j + 1);
        write_eaf1(dir + name, p.w.u2);
    }
    manifest.close();
}

namespace {

Real wall_trace_max(const VectorField& u) {
    const Grid& g = *u.grid();
    Real m = 0;
    for (int i = 0; i < g.n1; ++i) {
        m = std::max(m, std::abs(u.u1.v(i, 0)));
        m = std::max(m, std::abs(u.u1.v(i, g.n2 - 1)));
        m = std::max(m, std::abs(u.u2.v(i, 0)));
        m = std::max(m, std::abs(u.u2.v(i, g.n2 - 1)));
    }
    return m;
}

FamilyMember finish_member(Real alpha, int m, VectorField u0a, const VectorField& u0) {
    FamilyMember fm;
    fm.alpha = alpha;
    fm.m = m;
    fm.wall_max = wall_trace_max(u0a);
    fm.l2_diff = l2_norm(u0a - u0);
    fm.report = norms(u0a);
    fm.u0a = std::move(u0a);
    return fm;
}

}  // namespace

ApproximationFamily project_family(const EigenBasis& basis, const VectorField& u0,
                                   const std::vector<Real>& alphas) {
    const Grid& g = *basis.grid;
    if (u0.grid() != &g) throw ValidationError("project_family: grid mismatch");
    if (alphas.empty()) throw ValidationError("project_family: empty alpha list");

    const NormReport ur = norms(u0);
    const ScalarField div = divergence(u0);
    if (div.v.cwiseAbs().maxCoeff() > 1e-6 * (1.0 + ur.h1_semi))
        throw ValidationError("project_family: u0 is not discretely divergence-free");
    Real wall_normal = 0;
    for (int i = 0; i < g.n1; ++i) {
        wall_normal = std::max(wall_normal, std::abs(u0.u2.v(i, 0)));
        wall_normal = std::max(wall_normal, std::abs(u0.u2.v(i, g.n2 - 1)));
    }
    if (wall_normal > 1e-9 * (1.0 + ur.linf))
        throw ValidationError("project_family: u0 has nonzero normal trace at the walls");

    const Real lam1 = basis.lambda1();
    ApproximationFamily fam;
    fam.u0 = u0;
    for (Real a : alphas) {
        if (!(a > 0)) throw ValidationError("project_family: alphas must be positive");
        const long m = static_cast<long>(std::floor(1.0 / (a * a * lam1)));
        if (m > static_cast<long>(basis.pairs.size()))
            throw ValidationError("project_family: basis exhausted at alpha=" + fmt_full(a) +
                                  ": m=" + std::to_string(m) + " > basis size " +
                                  std::to_string(basis.pairs.size()) +
                                  " (build a basis with at least m members)");
        VectorField u0a(g);
        for (long j = 0; j < m; ++j) {
            const Real c = inner(u0, basis.pairs[j].w);
            u0a += c * basis.pairs[j].w;
        }
        fam.members.push_back(finish_member(a, static_cast<int>(m), std::move(u0a), u0));
    }
    return fam;
}

ApproximationFamily mollified_family(const Grid& g, const ScalarField& psi0,
                                     const std::vector<Real>& alphas) {
    if (psi0.grid != &g) throw ValidationError("mollified_family: grid mismatch");
    ApproximationFamily fam;
    fam.u0 = perp_gradient(psi0);
    const ScalarField dpsi1 = deriv_x1(psi0);
    const ScalarField dpsi2 = deriv_x2(psi0);

    for (Real a : alphas) {
        if (!(a > 0 && a < 1)) throw ValidationError("mollified_family: alphas must lie in (0,1)");
        const Real delta = std::pow(a, 2.0 / 3.0);
        if (!(delta < 0.5))
            throw ValidationError("mollified_family: collar alpha^(2/3) must stay below 1/2");
        const Cutoff cut(delta);
        // u = perp_grad(f psi0) with f = 1 - z, expanded by the product rule
        // so the wall values vanish identically (f = f' = 0 there).
        VectorField u(g);
        for (int i = 0; i < g.n1; ++i)
            for (int j = 0; j < g.n2; ++j) {
                const Real x2 = g.x2[j];
                const Real f = 1.0 - cut.z(x2);
                const Real fp = -cut.dz(x2);
                u.u1.v(i, j) = -(fp * psi0.v(i, j) + f * dpsi2.v(i, j));
                u.u2.v(i, j) = f * dpsi1.v(i, j);
            }
        fam.members.push_back(finish_member(a, 0, std::move(u), fam.u0));
    }
    return fam;
}

E1Report certify_E1(const ApproximationFamily& family, Real wall_tol) {
    if (family.members.size() < 4)
        throw ValidationError("certify_E1: need at least 4 family members");
    for (size_t i = 1; i < family.members.size(); ++i)
        if (!(family.members[i].alpha < family.members[i - 1].alpha))
            throw ValidationError("certify_E1: alphas must be strictly decreasing");

    E1Report rep;
    rep.u0_l2 = l2_norm(family.u0);
    const Real u0_linf = std::max(family.u0.u1.v.cwiseAbs().maxCoeff(),
                                  family.u0.u2.v.cwiseAbs().maxCoeff());
    for (const FamilyMember& m : family.members) {
        rep.alphas.push_back(m.alpha);
        rep.wall_max.push_back(m.wall_max);
        rep.l2_diff.push_back(m.l2_diff);
        rep.grad_norm.push_back(m.report.h1_semi);
        rep.h3_norm.push_back(m.report.h3);
    }

    rep.pass_wall = true;
    for (Real w : rep.wall_max)
        if (w > wall_tol * (1.0 + u0_linf)) rep.pass_wall = false;

    // (ii): nonincreasing up to a converged floor, small at the end.
    const Real floor = 1e-8 * std::max(rep.u0_l2, 1e-30);
    rep.pass_l2 = true;
    for (size_t i = 1; i < rep.l2_diff.size(); ++i)
        if (rep.l2_diff[i] > rep.l2_diff[i - 1] + floor) rep.pass_l2 = false;
    if (rep.l2_diff.back() > 0.1 * rep.u0_l2 && rep.u0_l2 > 0) rep.pass_l2 = false;

    const bool grads_trivial =
        *std::max_element(rep.grad_norm.begin(), rep.grad_norm.end()) < 1e-14;
    if (grads_trivial) {
        rep.slope_alpha_grad = rep.slope_alpha2_grad_sq = rep.slope_h3 = 0;
        rep.pass_grad = rep.pass_h3 = true;  // vacuous for a zero family
    } else {
        std::vector<Real> ag, a2g2, h3;
        for (size_t i = 0; i < rep.alphas.size(); ++i) {
            ag.push_back(rep.alphas[i] * rep.grad_norm[i]);
            a2g2.push_back(rep.alphas[i] * rep.alphas[i] * rep.grad_norm[i] * rep.grad_norm[i]);
            h3.push_back(rep.h3_norm[i]);
        }
        rep.slope_alpha_grad = loglog_slope(rep.alphas, ag);
        rep.slope_alpha2_grad_sq = loglog_slope(rep.alphas, a2g2);
        rep.slope_h3 = loglog_slope(rep.alphas, h3);
        rep.pass_grad = rep.slope_alpha_grad > 0;
        rep.pass_h3 = rep.slope_h3 >= -3.0 - 0.3;
    }
    return rep;
}

std::string E1Report::summary() const {
    std::ostringstream os;
    os << "E1 certification over " << alphas.size() << " members:\n";
    for (size_t i = 0; i < alphas.size(); ++i)
        os << "  alpha=" << alphas[i] << "  wall=" << wall_max[i] << "  |u0a-u0|=" << l2_diff[i]
           << "  |grad|=" << grad_norm[i] << "  |H3|=" << h3_norm[i] << "\n";
    os << "  (i) wall traces: " << (pass_wall ? "pass" : "FAIL") << "\n";
    os << "  (ii) L2 convergence: " << (pass_l2 ? "pass" : "FAIL") << "\n";
    os << "  (iii) slope[alpha*grad]=" << slope_alpha_grad
       << " (>0): " << (pass_grad ? "pass" : "FAIL")
       << "  [slope alpha^2 grad^2 = " << slope_alpha2_grad_sq << "]\n";
    os << "  (iv) slope[H3]=" << slope_h3 << " (>= -3.3): " << (pass_h3 ? "pass" : "FAIL") << "\n";
    return os.str();
}

}  // namespace eulera
