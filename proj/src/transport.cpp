#include "eulera/transport.hpp"

#include <algorithm>
#include <cmath>

namespace eulera {

namespace {

constexpr int kMaxN2 = 512;
constexpr int kMaxHalf = 512;
constexpr Real kNodeTol = 1e-14;

Real wrap_x1(Real x, Real L) {
    Real r = x - L * std::floor(x / L);
    if (r >= L) r -= L;
    if (r < 0) r = 0;
    return r;
}

Real clamp01(Real x) { return std::min(1.0, std::max(0.0, x)); }

// x2 interpolation stage: either an exact node hit or normalized
// barycentric weights over all x2 nodes.
struct X2Stage {
    int exact_row = -1;
    Real t[kMaxN2];
};

void x2_stage(const Grid& g, Real xi2, X2Stage& st) {
    const int m = g.n2 - 1;
    const Real c = std::min(1.0, std::max(-1.0, 1.0 - 2.0 * xi2));
    const int ir = static_cast<int>(std::lround(std::acos(c) * m / M_PI));
    for (int i = std::max(0, ir - 1); i <= std::min(m, ir + 1); ++i) {
        if (std::abs(xi2 - g.x2[i]) <= kNodeTol) {
            st.exact_row = i;
            return;
        }
    }
    st.exact_row = -1;
    Real denom = 0.0;
    for (int j = 0; j < g.n2; ++j) {
        const Real tj = g.bary2[j] / (xi2 - g.x2[j]);
        st.t[j] = tj;
        denom += tj;
    }
    const Real inv = 1.0 / denom;
    for (int j = 0; j < g.n2; ++j) st.t[j] *= inv;
}

// Exact x1 node hit, or -1.
int x1_hit(const Grid& g, Real xi1) {
    const int j = static_cast<int>(std::lround(xi1 / g.w1)) % g.n1;
    if (std::abs(xi1 - g.x1[j]) <= kNodeTol * std::max(1.0, g.L)) return j;
    if (j == 0 && std::abs(xi1 - g.L) <= kNodeTol * std::max(1.0, g.L)) return 0;
    return -1;
}

// Real part of the trigonometric interpolant from half-spectrum profile
// coefficients: c0 + 2 sum Re(c_k e^{i k kap xi}) + Nyquist cosine term.
Real trig_eval(const Real* cre, const Real* cim, int half, Real theta) {
    Real f = cre[0];
    const Real cs = std::cos(theta), sn = std::sin(theta);
    Real wr = cs, wi = sn;
    for (int k = 1; k < half - 1; ++k) {
        f += 2.0 * (cre[k] * wr - cim[k] * wi);
        const Real nwr = wr * cs - wi * sn;
        wi = wr * sn + wi * cs;
        wr = nwr;
    }
    f += cre[half - 1] * wr;  // Nyquist pairs with itself, no factor 2
    return f;
}

void take_half_modes(const ScalarField& f, int row_offset, MatrixXd& mre, MatrixXd& mim) {
    const Grid& g = *f.grid;
    const MatrixXcd modes = to_modes(f);
    const int half = g.num_half_modes();
    for (int k = 0; k < half; ++k) {
        mre.row(row_offset + k) = modes.row(k).real();
        mim.row(row_offset + k) = modes.row(k).imag();
    }
}

// 4-point Lagrange weights for uniform unit spacing, local coordinate
// lam in [0,1) between the middle pair.
void cubic_weights_uniform(Real lam, Real w[4]) {
    w[0] = -lam * (lam - 1.0) * (lam - 2.0) / 6.0;
    w[1] = (lam + 1.0) * (lam - 1.0) * (lam - 2.0) / 2.0;
    w[2] = -(lam + 1.0) * lam * (lam - 2.0) / 2.0;
    w[3] = (lam + 1.0) * lam * (lam - 1.0) / 6.0;
}

// 4-point Lagrange weights on arbitrary nodes xs[0..3] at point x.
void cubic_weights_nodes(const Real xs[4], Real x, Real w[4]) {
    for (int a = 0; a < 4; ++a) {
        Real num = 1.0, den = 1.0;
        for (int b = 0; b < 4; ++b) {
            if (b == a) continue;
            num *= (x - xs[b]);
            den *= (xs[a] - xs[b]);
        }
        w[a] = num / den;
    }
}

struct CubicStencil {
    int i1[4];
    int j0;
    Real w1[4], w2[4];
};

void cubic_stencil(const Grid& g, Real xi1, Real xi2, CubicStencil& st) {
    const Real s = xi1 / g.w1;
    int i0 = static_cast<int>(std::floor(s));
    const Real lam = s - i0;
    for (int a = 0; a < 4; ++a) {
        int idx = (i0 - 1 + a) % g.n1;
        if (idx < 0) idx += g.n1;
        st.i1[a] = idx;
    }
    cubic_weights_uniform(lam, st.w1);

    const Real* beg = g.x2.data();
    int j = static_cast<int>(std::upper_bound(beg, beg + g.n2, xi2) - beg) - 1;
    j = std::max(0, std::min(g.n2 - 2, j));
    st.j0 = std::max(0, std::min(g.n2 - 4, j - 1));
    Real xs[4] = {g.x2[st.j0], g.x2[st.j0 + 1], g.x2[st.j0 + 2], g.x2[st.j0 + 3]};
    cubic_weights_nodes(xs, xi2, st.w2);
}

Real cubic_eval(const Grid& g, const MatrixXd& vals, Real xi1, Real xi2) {
    CubicStencil st;
    cubic_stencil(g, xi1, xi2, st);
    Real f = 0.0;
    for (int a = 0; a < 4; ++a) {
        Real col = 0.0;
        for (int b = 0; b < 4; ++b) col += st.w2[b] * vals(st.i1[a], st.j0 + b);
        f += st.w1[a] * col;
    }
    return f;
}

}  // namespace

ScalarInterpolant::ScalarInterpolant(const ScalarField& f, InterpKind kind)
    : g_(f.grid), kind_(kind), vals_(f.v) {
    if (g_->n2 > kMaxN2 || g_->num_half_modes() > kMaxHalf)
        throw ValidationError("interpolant: grid exceeds compiled-in size limit");
    if (kind_ == InterpKind::Spectral) {
        const int half = g_->num_half_modes();
        mre_.resize(half, g_->n2);
        mim_.resize(half, g_->n2);
        take_half_modes(f, 0, mre_, mim_);
    }
}

Real ScalarInterpolant::eval(Real xi1, Real xi2) const {
    const Grid& g = *g_;
    xi1 = wrap_x1(xi1, g.L);
    xi2 = clamp01(xi2);
    if (kind_ == InterpKind::Cubic) return cubic_eval(g, vals_, xi1, xi2);

    X2Stage st;
    x2_stage(g, xi2, st);
    const int j1 = x1_hit(g, xi1);
    if (j1 >= 0) {
        if (st.exact_row >= 0) return vals_(j1, st.exact_row);
        Real f = 0.0;
        for (int j = 0; j < g.n2; ++j) f += st.t[j] * vals_(j1, j);
        return f;
    }
    const int half = g.num_half_modes();
    Real cre[kMaxHalf], cim[kMaxHalf];
    if (st.exact_row >= 0) {
        for (int k = 0; k < half; ++k) {
            cre[k] = mre_(k, st.exact_row);
            cim[k] = mim_(k, st.exact_row);
        }
    } else {
        Eigen::Map<const VectorXd> t(st.t, g.n2);
        Eigen::Map<VectorXd>(cre, half).noalias() = mre_ * t;
        Eigen::Map<VectorXd>(cim, half).noalias() = mim_ * t;
    }
    return trig_eval(cre, cim, half, g.kappa(1) * xi1);
}

VelocityInterpolant::VelocityInterpolant(const VectorField& u, InterpKind kind)
    : g_(u.grid()), kind_(kind), vals1_(u.u1.v), vals2_(u.u2.v) {
    if (g_->n2 > kMaxN2 || 2 * g_->num_half_modes() > kMaxHalf)
        throw ValidationError("interpolant: grid exceeds compiled-in size limit");
    if (kind_ == InterpKind::Spectral) {
        const int half = g_->num_half_modes();
        mre_.resize(2 * half, g_->n2);
        mim_.resize(2 * half, g_->n2);
        take_half_modes(u.u1, 0, mre_, mim_);
        take_half_modes(u.u2, half, mre_, mim_);
    }
}

void VelocityInterpolant::eval(Real xi1, Real xi2, Real& out1, Real& out2) const {
    const Grid& g = *g_;
    xi1 = wrap_x1(xi1, g.L);
    xi2 = clamp01(xi2);
    if (kind_ == InterpKind::Cubic) {
        out1 = cubic_eval(g, vals1_, xi1, xi2);
        out2 = cubic_eval(g, vals2_, xi1, xi2);
        return;
    }

    X2Stage st;
    x2_stage(g, xi2, st);
    const int j1 = x1_hit(g, xi1);
    if (j1 >= 0) {
        if (st.exact_row >= 0) {
            out1 = vals1_(j1, st.exact_row);
            out2 = vals2_(j1, st.exact_row);
            return;
        }
        Real f1 = 0.0, f2 = 0.0;
        for (int j = 0; j < g.n2; ++j) {
            f1 += st.t[j] * vals1_(j1, j);
            f2 += st.t[j] * vals2_(j1, j);
        }
        out1 = f1;
        out2 = f2;
        return;
    }
    const int half = g.num_half_modes();
    Real cre[kMaxHalf], cim[kMaxHalf];
    if (st.exact_row >= 0) {
        for (int k = 0; k < 2 * half; ++k) {
            cre[k] = mre_(k, st.exact_row);
            cim[k] = mim_(k, st.exact_row);
        }
    } else {
        Eigen::Map<const VectorXd> t(st.t, g.n2);
        Eigen::Map<VectorXd>(cre, 2 * half).noalias() = mre_ * t;
        Eigen::Map<VectorXd>(cim, 2 * half).noalias() = mim_ * t;
    }
    const Real theta = g.kappa(1) * xi1;
    out1 = trig_eval(cre, cim, half, theta);
    out2 = trig_eval(cre + half, cim + half, half, theta);
}

Real cfl_number(const VectorField& u, Real dt) {
    const Grid& g = *u.grid();
    Real cfl = 0.0;
    for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j) {
            const Real c1 = std::abs(u.u1.v(i, j)) * dt / g.w1;
            const Real c2 = std::abs(u.u2.v(i, j)) * dt / g.dx2_local[j];
            cfl = std::max(cfl, std::max(c1, c2));
        }
    return cfl;
}

ScalarField advect(const AdvectionScheme& scheme, const ScalarField& q, const VectorField& u,
                   Real dt) {
    const Grid& g = *scheme.grid;
    if (q.grid != scheme.grid || u.grid() != scheme.grid)
        throw ValidationError("advect: field grid mismatch");
    if (!(dt > 0)) throw ValidationError("advect: dt must be positive");
    if (!is_finite(u) || !is_finite(q)) throw ValidationError("advect: non-finite input");
    const Real cfl = cfl_number(u, dt);
    if (cfl > scheme.cfl_limit)
        throw NumericalError("advect: CFL violation, cfl=" + std::to_string(cfl) + " > limit=" +
                             std::to_string(scheme.cfl_limit) + "; reduce dt");

    const VelocityInterpolant ui(u, scheme.interp);
    const ScalarInterpolant qi(q, scheme.interp);

    Real gmin = 0, gmax = 0;
    if (scheme.limiter == LimiterMode::Global) {
        gmin = q.v.minCoeff();
        gmax = q.v.maxCoeff();
    }

    ScalarField out(g);
    for (int i = 0; i < g.n1; ++i) {
        for (int j = 0; j < g.n2; ++j) {
            const Real a1 = u.u1.v(i, j), a2 = u.u2.v(i, j);
            const Real xm1 = g.x1[i] - 0.5 * dt * a1;
            const Real xm2 = clamp01(g.x2[j] - 0.5 * dt * a2);
            Real b1, b2;
            ui.eval(xm1, xm2, b1, b2);
            const Real f1 = wrap_x1(g.x1[i] - dt * b1, g.L);
            const Real f2 = clamp01(g.x2[j] - dt * b2);

            Real val = qi.eval(f1, f2);
            if (scheme.limiter == LimiterMode::Cell) {
                int i1c = static_cast<int>(std::floor(f1 / g.w1)) % g.n1;
                if (i1c < 0) i1c += g.n1;
                const int i1n = (i1c + 1) % g.n1;
                const Real* beg = g.x2.data();
                int j2c = static_cast<int>(std::upper_bound(beg, beg + g.n2, f2) - beg) - 1;
                j2c = std::max(0, std::min(g.n2 - 2, j2c));
                const Real q00 = q.v(i1c, j2c), q01 = q.v(i1c, j2c + 1);
                const Real q10 = q.v(i1n, j2c), q11 = q.v(i1n, j2c + 1);
                const Real lo = std::min(std::min(q00, q01), std::min(q10, q11));
                const Real hi = std::max(std::max(q00, q01), std::max(q10, q11));
                val = std::min(hi, std::max(lo, val));
            } else if (scheme.limiter == LimiterMode::Global) {
                val = std::min(gmax, std::max(gmin, val));
            }
            out.v(i, j) = val;
        }
    }
    return out;
}

Real step_error_estimate(const AdvectionScheme& scheme, const ScalarField& q,
                         const VectorField& u, Real dt) {
    const ScalarField full = advect(scheme, q, u, dt);
    const ScalarField half = advect(scheme, advect(scheme, q, u, 0.5 * dt), u, 0.5 * dt);
    return l2_norm(full - half);
}

}  // namespace eulera
