#include "sinter/transport.hpp"

#include <Eigen/IterativeLinearSolvers>

#include "sinter/ops.hpp"

namespace sinter {

CHStepper::CHStepper(const Grid2D& g, double tol) : layout_(g) {
    A_ = fem::ch_pattern(layout_);
    LaggedLU::Options lo;
    lo.tol = tol;
    lo.restart = 40;
    lo.stale_trigger = 30;
    if (layout_.ndof > 1200000) { // exact LU memory gets out of hand
        lo.incomplete = true;
        lo.ilut_droptol = 1.0e-6;
        lo.ilut_fill = 12;
    }
    lin_ = LaggedLU(lo);
}

CHStepResult CHStepper::step(const ScalarField& C, const VectorField& vel, double dt,
                             const PhaseParams& p) {
    if (!(dt > 0.0)) throw std::invalid_argument("CHStepper::step: dt must be positive");
    fem::assemble_ch(layout_, C, vel, dt, p, A_, rhs_);
    // a large dt change makes the stale factorisation a poor preconditioner
    if (last_dt_ > 0.0 && (dt > 1.5 * last_dt_ || dt < 0.5 * last_dt_)) lin_.reset();
    last_dt_ = dt;

    SolveStats stats;
    Vec x = lin_.solve(A_, rhs_, &stats, prev_.size() ? &prev_ : nullptr);
    prev_ = x;

    const Grid2D& g = layout_.grid;
    CHStepResult out;
    out.C = ScalarField(g);
    out.mu = ScalarField(g);
    for (int n = 0; n < g.nodes(); ++n) {
        out.C.v[n] = x[layout_.c_dof(n)];
        out.mu.v[n] = x[layout_.w_dof(n)];
    }
    out.mass_before = integrate(C);
    out.mass_after = integrate(out.C);
    out.stats = stats;
    return out;
}

ScalarField compute_mu(const ScalarField& C, const PhaseParams& p) {
    const Grid2D& g = C.grid;
    fem::SpMat M;
    fem::assemble_mass(g, M);
    fem::Vec rhs = fem::potential_rhs(g, C, p);
    Eigen::ConjugateGradient<fem::SpMat, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(1.0e-13);
    cg.compute(M);
    fem::Vec mu = cg.solve(rhs);
    ScalarField out(g);
    for (int n = 0; n < g.nodes(); ++n) out.v[n] = mu[n];
    return out;
}

} // namespace sinter
