#include "eulera/grid.hpp"

#include <cmath>

namespace eulera {

namespace {

// Clenshaw-Curtis weights for the n-node Chebyshev-Lobatto rule on [-1,1],
// exact for polynomials of degree < n.  Standard cosine-sum construction.
VectorXd clenshaw_curtis(int n) {
    const int m = n - 1;
    VectorXd w = VectorXd::Zero(n);
    VectorXd theta(n);
    for (int i = 0; i < n; ++i) theta[i] = M_PI * i / m;

    VectorXd v = VectorXd::Ones(n - 2);
    if (m % 2 == 0) {
        w[0] = 1.0 / (m * m - 1.0);
        w[m] = w[0];
        for (int k = 1; k <= m / 2 - 1; ++k)
            for (int i = 1; i < m; ++i)
                v[i - 1] -= 2.0 * std::cos(2.0 * k * theta[i]) / (4.0 * k * k - 1.0);
        for (int i = 1; i < m; ++i)
            v[i - 1] -= std::cos(m * theta[i]) / (m * m - 1.0);
    } else {
        w[0] = 1.0 / (m * m);
        w[m] = w[0];
        for (int k = 1; k <= (m - 1) / 2; ++k)
            for (int i = 1; i < m; ++i)
                v[i - 1] -= 2.0 * std::cos(2.0 * k * theta[i]) / (4.0 * k * k - 1.0);
    }
    for (int i = 1; i < m; ++i) w[i] = 2.0 * v[i - 1] / m;
    return w;
}

}  // namespace

Grid make_grid(Real L, int n1, int n2) {
    if (!(L > 0)) throw ValidationError("make_grid: L must be positive");
    if (n1 < 4 || n1 % 2 != 0) throw ValidationError("make_grid: n1 must be even and >= 4");
    if (n2 < 8) throw ValidationError("make_grid: n2 must be >= 8");

    Grid g;
    g.L = L;
    g.n1 = n1;
    g.n2 = n2;
    g.w1 = L / n1;

    g.x1.resize(n1);
    for (int j = 0; j < n1; ++j) g.x1[j] = g.w1 * j;

    // Ascending Chebyshev-Lobatto nodes on [0,1]; endpoints exact.
    const int m = n2 - 1;
    g.x2.resize(n2);
    for (int i = 0; i < n2; ++i) g.x2[i] = 0.5 * (1.0 - std::cos(M_PI * i / m));
    g.x2[0] = 0.0;
    g.x2[m] = 1.0;

    // Barycentric weights for Chebyshev-Lobatto points (affine maps cancel).
    g.bary2.resize(n2);
    for (int i = 0; i < n2; ++i) {
        Real w = (i % 2 == 0) ? 1.0 : -1.0;
        if (i == 0 || i == m) w *= 0.5;
        g.bary2[i] = w;
    }

    // Differentiation matrix from the barycentric form with the
    // negative-sum trick, so constants differentiate to exactly zero.
    g.d2.resize(n2, n2);
    for (int i = 0; i < n2; ++i) {
        Real rowsum = 0.0;
        for (int j = 0; j < n2; ++j) {
            if (i == j) continue;
            const Real dij = (g.bary2[j] / g.bary2[i]) / (g.x2[i] - g.x2[j]);
            g.d2(i, j) = dij;
            rowsum += dij;
        }
        g.d2(i, i) = -rowsum;
    }
    g.d2sq = g.d2 * g.d2;

    g.w2 = 0.5 * clenshaw_curtis(n2);

    // DFT pair in x1; forward includes the 1/n1 factor so that dft*nodal
    // gives trigonometric-interpolant coefficients directly.
    g.dft.resize(n1, n1);
    g.idft.resize(n1, n1);
    for (int k = 0; k < n1; ++k)
        for (int j = 0; j < n1; ++j) {
            const Real arg = 2.0 * M_PI * k * j / n1;
            g.dft(k, j) = Complex(std::cos(arg), -std::sin(arg)) / static_cast<Real>(n1);
            g.idft(j, k) = Complex(std::cos(arg), std::sin(arg));
        }

    // x1 differentiation: conjugate diag(i*k~) by the DFT, with the signed
    // frequency k~ and the Nyquist mode mapped to zero.
    VectorXcd ik(n1);
    for (int k = 0; k < n1; ++k) {
        int ks = (k <= n1 / 2) ? k : k - n1;
        if (k == n1 / 2) ks = 0;
        ik[k] = Complex(0.0, 2.0 * M_PI * ks / L);
    }
    g.dx1 = (g.idft * ik.asDiagonal() * g.dft).real();

    g.dx2_local.resize(n2);
    for (int i = 0; i < n2; ++i) {
        Real lo = (i > 0) ? g.x2[i] - g.x2[i - 1] : g.x2[1] - g.x2[0];
        Real hi = (i < m) ? g.x2[i + 1] - g.x2[i] : g.x2[m] - g.x2[m - 1];
        g.dx2_local[i] = std::min(lo, hi);
    }

    return g;
}

}  // namespace eulera
