#pragma once
// Stokes eigenbasis on the channel and the spectral-projection construction
// of approximation families: u0_alpha = P_m u0 with m = floor(1/(alpha^2
// lambda_1)), certified against the four conditions (wall trace, L2
// convergence, gradient growth o(1/alpha), H3 growth O(1/alpha^3)).
//
// Per Fourier mode k != 0 the eigenproblem is solved in stream form,
//     (D^2 - k^2)^2 psi = -lambda (D^2 - k^2) psi,  psi = psi' = 0 at walls,
// and for k = 0 as the shear problem -w'' = lambda w with Dirichlet ends.
// Collocation eigenproblems emit spurious modes; candidates are kept only
// when the interior-row residual is below `residual_filter`.

#include "eulera/field.hpp"

#include <string>
#include <vector>

namespace eulera {

struct EigenPair {
    Real lambda = 0;
    int k = 0;        // Fourier mode index
    int phase = 0;    // 0 cosine, 1 sine (k > 0 only)
    Real residual = 0;
    VectorXd profile;  // wall-normal stream (k>0) or velocity (k=0) profile
    VectorField w;     // orthonormalized velocity eigenfield
};

struct EigenBasis {
    const Grid* grid = nullptr;
    std::vector<EigenPair> pairs;  // ascending lambda
    Real gramian_residual = 0;     // max |<w_i,w_j> - delta_ij|
    int rejected = 0;              // candidates dropped by the residual filter

    Real lambda1() const;
};

/// Computes per_mode_count eigenpairs for every |k| <= k_max, filters,
/// normalizes, merges and sorts.  Requires k_max < n1/2 and
/// per_mode_count < n2 - 4.
EigenBasis stokes_eigenbasis(const Grid& g, int k_max, int per_mode_count,
                             Real residual_filter = 1e-6);

/// Writes one EAF1 file pair per eigenfield plus manifest.csv (j,k,lambda,residual).
void save_eigenbasis(const EigenBasis& basis, const std::string& dir);

struct FamilyMember {
    Real alpha = 0;
    int m = 0;
    VectorField u0a;
    Real wall_max = 0;   // max |u0a| over both walls
    Real l2_diff = 0;    // ||u0a - u0||
    NormReport report;
};

struct ApproximationFamily {
    VectorField u0;
    std::vector<FamilyMember> members;  // in the given alpha order
};

/// Projects u0 onto the first m(alpha) eigenfields for each alpha.
/// Preconditions: u0 divergence-free with zero normal trace; the basis must
/// hold at least m members for the smallest alpha (else ValidationError
/// reporting the required size).
ApproximationFamily project_family(const EigenBasis& basis, const VectorField& u0,
                                   const std::vector<Real>& alphas);

/// Second construction: stream-function mollification.  Multiplies the
/// stream of u0 by (1 - cutoff) with collar width delta(alpha) =
/// alpha^(2/3) and re-derives the velocity, which then vanishes at the
/// walls identically.
ApproximationFamily mollified_family(const Grid& g, const ScalarField& psi0,
                                     const std::vector<Real>& alphas);

struct E1Report {
    std::vector<Real> alphas;
    std::vector<Real> wall_max;     // condition (i): each must be ~0
    std::vector<Real> l2_diff;      // condition (ii): decreasing, small tail
    std::vector<Real> grad_norm;    // ||grad u0a||
    std::vector<Real> h3_norm;      // ||u0a||_H3
    Real u0_l2 = 0;

    Real slope_alpha_grad = 0;      // slope of alpha*||grad u0a|| vs alpha, must be > 0
    Real slope_alpha2_grad_sq = 0;  // slope of alpha^2 ||grad u0a||^2 vs alpha
    Real slope_h3 = 0;              // slope of ||u0a||_H3 vs alpha

    bool pass_wall = false;
    bool pass_l2 = false;
    bool pass_grad = false;
    bool pass_h3 = false;
    bool pass() const { return pass_wall && pass_l2 && pass_grad && pass_h3; }

    std::string summary() const;
};

/// Empirical certification of the four family conditions.  Requires at
/// least 4 members at decreasing alpha.
E1Report certify_E1(const ApproximationFamily& family, Real wall_tol = 1e-9);

}  // namespace eulera
