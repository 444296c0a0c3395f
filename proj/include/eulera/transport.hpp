#pragma once
// Semi-Lagrangian transport of a scalar by a frozen velocity: backward
// midpoint trajectory tracing plus interpolation at the feet.  Respects the
// max principle through a range limiter, so the transported norm can only
// decay.
//
// Interpolation kinds:
//   Spectral - trigonometric interpolation in x1, global Chebyshev
//              barycentric interpolation in x2 (default; see README notes
//              on accuracy floors),
//   Cubic    - 4-point periodic Lagrange in x1, 4-point local Lagrange on
//              the nonuniform x2 nodes.
// Limiter modes:
//   Cell   - clip to the data range of the 2x2 cell bracketing the foot,
//   Global - clip to the pre-step global data range,
//   Off    - raw interpolation.

#include "eulera/field.hpp"

namespace eulera {

enum class InterpKind { Spectral, Cubic };
enum class LimiterMode { Off, Cell, Global };

struct AdvectionScheme {
    const Grid* grid = nullptr;
    InterpKind interp = InterpKind::Spectral;
    LimiterMode limiter = LimiterMode::Cell;
    Real cfl_limit = 2.0;

    explicit AdvectionScheme(const Grid& g) : grid(&g) {}
};

/// Interpolates one scalar field at arbitrary points.  Holds copies of the
/// data it needs; evaluation is thread-safe.
class ScalarInterpolant {
  public:
    ScalarInterpolant(const ScalarField& f, InterpKind kind);
    Real eval(Real xi1, Real xi2) const;

  private:
    const Grid* g_;
    InterpKind kind_;
    MatrixXd vals_;
    MatrixXd mre_, mim_;  // half-spectrum rows, real/imag parts
};

/// Interpolates both velocity components with one shared weight stage.
class VelocityInterpolant {
  public:
    VelocityInterpolant(const VectorField& u, InterpKind kind);
    void eval(Real xi1, Real xi2, Real& out1, Real& out2) const;

  private:
    const Grid* g_;
    InterpKind kind_;
    MatrixXd vals1_, vals2_;
    MatrixXd mre_, mim_;  // stacked: rows [0,half) component 1, [half,2*half) component 2
};

/// Node-local displacement-in-cells measure: max over nodes of
/// |u_i| dt / (local spacing in direction i).
Real cfl_number(const VectorField& u, Real dt);

/// One transport step: q_new(x) = q(foot(x)) with the backward midpoint
/// foot under the frozen velocity u.  Throws NumericalError when the CFL
/// measure exceeds the scheme limit and ValidationError on bad inputs.
ScalarField advect(const AdvectionScheme& scheme, const ScalarField& q, const VectorField& u,
                   Real dt);

/// Local-error proxy ||advect(dt) - advect(dt/2) o advect(dt/2)||_L2.
Real step_error_estimate(const AdvectionScheme& scheme, const ScalarField& q,
                         const VectorField& u, Real dt);

}  // namespace eulera
