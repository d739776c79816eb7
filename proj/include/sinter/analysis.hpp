#pragma once
// Measurements on the evolving fields: neck half-width at a plane, body
// extent and strain along x, area of the dense region, and the stress field
// with its statistics over the dense region.

#include "sinter/grid.hpp"
#include "sinter/phasefield.hpp"

namespace sinter {

// Half-width of the contiguous dense region (C >= level) around y = 0 on the
// vertical line x = x_plane, with linear sub-cell interpolation of both the
// line values and the crossing. Returns 0 when the line is not dense at y=0.
// With mirror_y0 the bottom edge is a symmetry plane (half domains): only the
// upward crossing is measured, from y = 0.
double neck_halfwidth(const ScalarField& C, double x_plane = 0.0, double level = 0.5,
                      bool mirror_y0 = false);

// Extent of the dense region along x (envelope over y per grid column, with
// sub-cell interpolation of the end crossings).
double axial_extent(const ScalarField& C, double level = 0.5);

// |L - L0| / L0
double axial_strain(const ScalarField& C, double L0, double level = 0.5);

// Area of {C >= level}: each cell is split into four triangles around its
// centre and the level set is clipped linearly per triangle.
double phase_area(const ScalarField& C, double level = 0.5);

// Frobenius norm of sigma = eta_eff (grad u + grad u^T) + (p - f) I, with f
// the energy density and p the stored pressure (sign convention of the
// +p div(v) momentum weak form). Gradients are the recovered nodal ones.
ScalarField stress_fnorm(const ScalarField& C, const VectorField& vel,
                         const ScalarField& pressure, const PhaseParams& params, double eta_p);

struct StressStats {
    double max = 0.0;
    double max_x = 0.0, max_y = 0.0; // location of the maximum
    double mean = 0.0;
    double stddev = 0.0;
    int count = 0; // nodes with C >= level
};

StressStats stress_stats(const ScalarField& stress, const ScalarField& C, double level = 0.5);

} // namespace sinter
