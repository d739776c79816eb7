#pragma once
// Quasi-static creeping flow of the two-phase mixture. Each solve builds the
// saddle system (viscous block, pressure coupling, one pinned pressure node,
// no-slip walls) driven by the capillary force of the current phase field,
// and returns nodal velocity and mean-shifted pressure.
//
// Sign conventions follow the weak form with +p div(v) in the momentum rows,
// so the stored pressure is the negative of the conventional one.

#include "sinter/fem.hpp"
#include "sinter/grid.hpp"
#include "sinter/linsolve.hpp"
#include "sinter/phasefield.hpp"

namespace sinter {

enum class StokesDisc {
    taylor_hood,      // biquadratic velocity, bilinear pressure
    stabilized_q1q1,  // equal-order bilinear with pressure-gradient stabilisation
};

struct StokesOptions {
    StokesDisc disc = StokesDisc::taylor_hood;
    double tol = 1.0e-9;
    double stab_c = 0.1;               // stabilisation strength (equal-order only)
    int incomplete_threshold = 200000; // dofs above which ILU replaces the exact
                                       // factorisation (5x higher for the symmetric
                                       // LDLT path, which fills far less)
    int restart = 50;
    int stale_trigger = 40;
    bool sym_x0 = false; // treat the left edge as a symmetry plane
    bool sym_y0 = false; // treat the bottom edge as a symmetry plane
};

struct StokesSolution {
    VectorField velocity;
    ScalarField pressure;
    double div_residual = 0.0; // 2-norm of the continuity rows of A x - b
    SolveStats stats;
};

class StokesSolver {
  public:
    explicit StokesSolver(const Grid2D& g, StokesOptions opt = {});

    StokesSolution solve(const ScalarField& C, const PhaseParams& p, double eta_p,
                         const fem::BodyForce& extra_force = {});

    const fem::StokesLayout& layout() const { return layout_; }

  private:
    fem::StokesLayout layout_;
    StokesOptions opt_;
    fem::SpMat A_;
    LaggedLU lin_;
    Vec rhs_;
    Vec prev_;
};

// One-shot convenience for tests and tools.
StokesSolution solve_stokes(const ScalarField& C, const PhaseParams& p, double eta_p,
                            StokesOptions opt = {});

} // namespace sinter
