#pragma once
// Periodic-channel collocation grid: Fourier nodes in x1 on [0,L),
// Chebyshev-Lobatto nodes in x2 on [0,1].  Carries the differentiation
// matrices and quadrature weights used by every other module.  Immutable
// after construction and safe to share across threads.

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace eulera {

using Real = double;
using Complex = std::complex<Real>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

/// Bad arguments or malformed input files.  The CLI maps this to exit 1.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A solve failed numerically (singular mode, Picard divergence, CFL
/// violation).  The CLI maps this to exit 2.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Grid {
    Real L = 0;            // x1 period
    int n1 = 0, n2 = 0;    // Fourier nodes, Chebyshev-Lobatto nodes
    VectorXd x1;           // x1[j] = j*L/n1
    VectorXd x2;           // ascending, x2[0] = 0, x2[n2-1] = 1
    MatrixXd d2;           // first-derivative matrix in x2
    MatrixXd d2sq;         // d2*d2
    VectorXd w2;           // Clenshaw-Curtis weights on [0,1]
    Real w1 = 0;           // uniform x1 quadrature weight, L/n1
    MatrixXd dx1;          // x1 differentiation matrix (Nyquist zeroed)
    MatrixXcd dft;         // nodal -> Fourier coefficients (divided by n1)
    MatrixXcd idft;        // Fourier coefficients -> nodal
    VectorXd bary2;        // barycentric weights for the x2 nodes
    VectorXd dx2_local;    // per-node min adjacent x2 spacing (for CFL)

    // Wavenumber of mode k = 0 .. n1/2.
    Real kappa(int k) const { return 2.0 * M_PI * static_cast<Real>(k) / L; }
    int num_half_modes() const { return n1 / 2 + 1; }
};

/// Builds the grid.  Requires L > 0, n1 >= 4 even, n2 >= 8.
Grid make_grid(Real L, int n1, int n2);

}  // namespace eulera
