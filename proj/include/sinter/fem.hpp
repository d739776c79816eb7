#pragma once
// Bilinear/biquadratic finite elements on the structured grid.
//
// Velocity uses either biquadratic elements on the refined lattice
// (2nx-1 x 2ny-1 nodes) with bilinear pressure, or bilinear for both with a
// pressure-gradient stabilisation. The phase/potential pair is bilinear with
// the two fields interleaved per node. Sparsity patterns are enumerated
// directly from the lattice stencils, so no triplet buffers are needed, and
// element scatter uses binary search within the fixed pattern. Parallel
// assembly runs over a 4-colouring of the cells (parity of cell indices), so
// no two simultaneously assembled elements share a node and the scatter
// order, hence the floating-point result, is reproducible for any thread
// count.

#include <Eigen/Sparse>
#include <array>
#include <functional>

#include "sinter/grid.hpp"
#include "sinter/phasefield.hpp"

namespace sinter::fem {

using SpMat = Eigen::SparseMatrix<double>; // compressed column storage
using Vec = Eigen::VectorXd;

// ----------------------------------------------------------------- layouts

struct StokesLayout {
    Grid2D grid;
    bool taylor_hood = true;
    bool sym_x0 = false; // left edge is a symmetry plane (only u_x pinned)
    bool sym_y0 = false; // bottom edge is a symmetry plane (only u_y pinned)
    int vnx = 0, vny = 0; // velocity lattice: refined for biquadratic
    int np = 0;           // pressure nodes (grid nodes)
    int ndof = 0;         // 2*vel nodes + np

    explicit StokesLayout(const Grid2D& g, bool th, bool sx0 = false, bool sy0 = false);

    int vnode(int I, int J) const { return J * vnx + I; }
    int vel_dof(int vn, int comp) const { return 2 * vn + comp; }
    int p_dof(int pn) const { return 2 * vnx * vny + pn; }
    // With closed walls the pressure is defined up to a constant; one corner
    // node is pinned to zero (a dense zero-mean row would ruin the LU fill).
    int p_pin_dof() const { return p_dof(0); }
    bool vel_on_wall(int I, int J) const {
        return I == 0 || J == 0 || I == vnx - 1 || J == vny - 1;
    }
    // component forced to zero: no-slip outer walls pin both, symmetry
    // planes pin only the normal component
    bool vel_pinned(int I, int J, int comp) const {
        if (I == 0 && (comp == 0 || !sym_x0)) return true;
        if (J == 0 && (comp == 1 || !sym_y0)) return true;
        return I == vnx - 1 || J == vny - 1;
    }
};

struct CHLayout {
    Grid2D grid;
    int ndof = 0; // 2 per node, interleaved: C at 2n, potential at 2n+1

    explicit CHLayout(const Grid2D& g) : grid(g), ndof(2 * g.nodes()) {}
    int c_dof(int n) const { return 2 * n; }
    int w_dof(int n) const { return 2 * n + 1; }
};

// ---------------------------------------------------------------- patterns

SpMat stokes_pattern(const StokesLayout& L);
SpMat ch_pattern(const CHLayout& L);
SpMat mass_pattern(const Grid2D& g); // plain bilinear 9-point stencil

// ---------------------------------------------------------------- assembly

using BodyForce = std::function<std::array<double, 2>(double, double)>;

// Viscous block, pressure coupling, capillary right-hand side from the
// phase field, pinned-pressure and wall rows. The capillary force enters in
// the potential form -C grad(mu), which vanishes identically when the nodal
// potential is constant, so a resting equilibrium shape produces no flow
// (the tensor form kappa grad C (x) grad C leaves large spurious currents).
// Matrix values are overwritten; the pattern must come from stokes_pattern
// on the same layout.
void assemble_stokes(const StokesLayout& L, const ScalarField& C, const ScalarField& mu,
                     const PhaseParams& p, double eta_p, double stab_c, SpMat& A, Vec& rhs,
                     const BodyForce& extra_force = {});

// One implicit transport step: convected phase row and regularised potential
// row, with the nonlinear well slope frozen at the previous state and a
// 2*alpha shift keeping the split contractive.
void assemble_ch(const CHLayout& L, const ScalarField& C, const VectorField& vel, double dt,
                 const PhaseParams& p, SpMat& A, Vec& rhs);

// Consistent bilinear mass matrix.
void assemble_mass(const Grid2D& g, SpMat& M);

// Right-hand side of the potential projection: well derivative plus the
// gradient-energy pairing, one entry per node.
Vec potential_rhs(const Grid2D& g, const ScalarField& C, const PhaseParams& p);

namespace serial {
void assemble_stokes(const StokesLayout& L, const ScalarField& C, const ScalarField& mu,
                     const PhaseParams& p, double eta_p, double stab_c, SpMat& A, Vec& rhs,
                     const BodyForce& extra_force = {});
void assemble_ch(const CHLayout& L, const ScalarField& C, const VectorField& vel, double dt,
                 const PhaseParams& p, SpMat& A, Vec& rhs);
} // namespace serial

} // namespace sinter::fem
