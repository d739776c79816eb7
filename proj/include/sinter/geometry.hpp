#pragma once
// Initial particle packs: axis-aligned elliptic particles placed in a
// rectangular box, rasterised onto the grid as a union of equilibrium
// interface profiles (pointwise max, positive distance = inside).

#include <vector>

#include "sinter/grid.hpp"

namespace sinter {

struct Particle {
    double cx = 0.0, cy = 0.0;
    double A = 1.0; // semi-axis along x
    double B = 1.0; // semi-axis along y; circle when A == B
};

struct Scene {
    std::vector<Particle> parts;
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
};

// Two equal circles of radius R tangent at the origin, in the standard
// benchmark box of 8R x 6R (margins of 2R beyond the pack).
Scene scene_two_equal(double R);

// Circles R1 and b*R1 tangent at the origin, margins of 1.5 * largest radius.
Scene scene_pair(double R1, double b);

// Tangent circles in a row along y = 0, pack centred at x = 0.
Scene scene_chain(const std::vector<double>& radii);

// Two equal-area ellipses (A = R/sqrt(lambda), B = R*sqrt(lambda),
// lambda = B/A in (0,1]) tangent at the origin.
Scene scene_ellipse_pair(double R, double lambda);

// One circle of radius R, margins of 1.5R.
Scene scene_disk(double R);

// Pull the two circles of an equal pair together until the lens where they
// cross has half-height X0 * R_ref. The reference is either the particle
// radius itself or sqrt(2) times it (final-disk convention); both appear in
// the neck-growth literature, so the choice is explicit.
enum class NeckNorm { plain, sqrt2 };
void scene_set_initial_neck(Scene& s, double X0, NeckNorm norm = NeckNorm::plain);

// Signed distance to the particle boundary, positive inside. Exact for
// circles; ellipses use the closest-point problem solved by bisection.
double signed_distance(const Particle& p, double px, double py);

// Grid covering the scene box with square cells of size h. The box is
// stretched outward by less than one cell if needed to fit whole cells.
Grid2D make_grid(const Scene& s, double h);

// Particles must lie inside the grid box; with allow_x0 / allow_y0 they may
// overhang the left / bottom edge (quarter and half domains cut by symmetry
// planes).
ScalarField initial_field(const Scene& s, const Grid2D& g, double delta_sf,
                          bool allow_x0 = false, bool allow_y0 = false);

} // namespace sinter
