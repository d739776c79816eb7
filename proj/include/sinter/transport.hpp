#pragma once
// Convected phase transport: one implicit step of the conserved equation
//   dC/dt + div(C u) = div(M grad w),  w = g(C) - kappa lap(C)
// in weak form with natural boundary conditions. The well slope is frozen at
// the previous state with a 2*alpha shift, so the step is linear and the
// total amount of C is conserved to rounding regardless of how well the
// velocity satisfies incompressibility (the discrete convection term has
// exact zero column sums).

#include "sinter/fem.hpp"
#include "sinter/grid.hpp"
#include "sinter/linsolve.hpp"
#include "sinter/phasefield.hpp"

namespace sinter {

struct CHStepResult {
    ScalarField C;
    ScalarField mu;          // chemical potential, same step
    double mass_before = 0.0;
    double mass_after = 0.0;
    SolveStats stats;
};

class CHStepper {
  public:
    explicit CHStepper(const Grid2D& g, double tol = 1.0e-11);

    CHStepResult step(const ScalarField& C, const VectorField& vel, double dt,
                      const PhaseParams& p);

  private:
    fem::CHLayout layout_;
    fem::SpMat A_;
    LaggedLU lin_;
    Vec rhs_;
    Vec prev_;
    double last_dt_ = -1.0;
};

// Chemical potential of a given phase field: mass projection of
// g(C) + kappa times the gradient pairing. Used by tests and output.
ScalarField compute_mu(const ScalarField& C, const PhaseParams& p);

} // namespace sinter
