#include "sinter/flow.hpp"

#include "sinter/ops.hpp"

namespace sinter {

StokesSolver::StokesSolver(const Grid2D& g, StokesOptions opt)
    : layout_(g, opt.disc == StokesDisc::taylor_hood, opt.sym_x0, opt.sym_y0), opt_(opt) {
    A_ = fem::stokes_pattern(layout_);
    LaggedLU::Options lo;
    lo.tol = opt.tol;
    lo.restart = opt.restart;
    lo.stale_trigger = opt.stale_trigger;
    // the stabilised equal-order system is symmetric quasi-definite, so the
    // cheaper LDLT applies; the unstabilised saddle system needs LU pivoting
    lo.symmetric = opt.disc == StokesDisc::stabilized_q1q1;
    lo.incomplete = layout_.ndof > (lo.symmetric ? 5 : 1) * opt.incomplete_threshold;
    lin_ = LaggedLU(lo);
}

StokesSolution StokesSolver::solve(const ScalarField& C, const PhaseParams& p, double eta_p,
                                   const fem::BodyForce& extra_force) {
    if (!(eta_p > 0.0)) throw std::invalid_argument("particle viscosity must be positive");
    fem::assemble_stokes(layout_, C, p, eta_p, opt_.stab_c, A_, rhs_, extra_force);
    SolveStats stats;
    Vec x = lin_.solve(A_, rhs_, &stats, prev_.size() ? &prev_ : nullptr);
    prev_ = x;

    const Grid2D& g = layout_.grid;
    StokesSolution out;
    out.velocity = VectorField(g);
    out.pressure = ScalarField(g);
    out.stats = stats;
    const int step = layout_.taylor_hood ? 2 : 1;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            int vn = layout_.vnode(step * i, step * j);
            int n = g.node(i, j);
            out.velocity.x[n] = x[layout_.vel_dof(vn, 0)];
            out.velocity.y[n] = x[layout_.vel_dof(vn, 1)];
            out.pressure.v[n] = x[layout_.p_dof(n)];
            // pinned components are exact zeros by construction
            if (layout_.vel_pinned(step * i, step * j, 0)) out.velocity.x[n] = 0.0;
            if (layout_.vel_pinned(step * i, step * j, 1)) out.velocity.y[n] = 0.0;
        }

    // the solve pins one corner pressure node; report the zero-mean shift
    double area = (g.nx - 1) * g.h * (g.ny - 1) * g.h;
    double mean = integrate(out.pressure) / area;
    for (double& v : out.pressure.v) v -= mean;

    Vec resid = A_ * x - rhs_;
    out.div_residual = resid.segment(2 * layout_.vnx * layout_.vny, layout_.np).norm();
    return out;
}

StokesSolution solve_stokes(const ScalarField& C, const PhaseParams& p, double eta_p,
                            StokesOptions opt) {
    StokesSolver solver(C.grid, opt);
    return solver.solve(C, p, eta_p);
}

} // namespace sinter
