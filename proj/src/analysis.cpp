#include "sinter/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "sinter/materials.hpp"
#include "sinter/ops.hpp"

namespace sinter {

namespace {

// values of C along the vertical line x = x_plane, one per grid row
std::vector<double> line_values(const ScalarField& C, double x_plane) {
    const Grid2D& g = C.grid;
    double fx = (x_plane - g.x0) / g.h;
    int i0 = static_cast<int>(std::floor(fx));
    if (i0 < 0 || i0 >= g.nx - 1) {
        if (std::abs(fx - (g.nx - 1)) < 1e-9) i0 = g.nx - 2; // right edge
        else throw std::invalid_argument("neck plane lies outside the grid");
    }
    double w = fx - i0;
    std::vector<double> out(g.ny);
    for (int j = 0; j < g.ny; ++j)
        out[j] = (1.0 - w) * C(i0, j) + w * C(i0 + 1, j);
    return out;
}

// first crossing of `level` walking from index j0 in direction dir, as a
// fractional row coordinate; returns +-inf if the values never drop below
double crossing_from(const std::vector<double>& v, int j0, int dir, double level) {
    int j = j0;
    while (true) {
        int jn = j + dir;
        if (jn < 0 || jn >= static_cast<int>(v.size()))
            return dir > 0 ? std::numeric_limits<double>::infinity()
                           : -std::numeric_limits<double>::infinity();
        if (v[jn] < level) {
            double f = (v[j] - level) / (v[j] - v[jn]);
            return j + dir * f;
        }
        j = jn;
    }
}

} // namespace

double neck_halfwidth(const ScalarField& C, double x_plane, double level, bool mirror_y0) {
    const Grid2D& g = C.grid;
    std::vector<double> v = line_values(C, x_plane);
    // row nearest y = 0
    int j0 = static_cast<int>(std::lround((0.0 - g.y0) / g.h));
    j0 = std::clamp(j0, 0, g.ny - 1);
    if (v[j0] < level) return 0.0;
    double up = crossing_from(v, j0, +1, level);
    if (mirror_y0) {
        if (!std::isfinite(up))
            throw std::runtime_error("dense region reaches the domain wall; box too small");
        return g.y0 + up * g.h; // y of the crossing, measured from the plane
    }
    double dn = crossing_from(v, j0, -1, level);
    if (!std::isfinite(up) || !std::isfinite(dn))
        throw std::runtime_error("dense region reaches the domain wall; box too small");
    return 0.5 * (up - dn) * g.h;
}

double axial_extent(const ScalarField& C, double level) {
    const Grid2D& g = C.grid;
    std::vector<double> colmax(g.nx, 0.0);
    for (int i = 0; i < g.nx; ++i) {
        double m = C(i, 0);
        for (int j = 1; j < g.ny; ++j) m = std::max(m, C(i, j));
        colmax[i] = m;
    }
    int lo = -1, hi = -1;
    for (int i = 0; i < g.nx; ++i)
        if (colmax[i] >= level) {
            if (lo < 0) lo = i;
            hi = i;
        }
    if (lo < 0) return 0.0;
    double xl = g.x(lo), xr = g.x(hi);
    if (lo > 0) {
        double f = (colmax[lo] - level) / (colmax[lo] - colmax[lo - 1]);
        xl -= f * g.h;
    }
    if (hi < g.nx - 1) {
        double f = (colmax[hi] - level) / (colmax[hi] - colmax[hi + 1]);
        xr += f * g.h;
    }
    return xr - xl;
}

double axial_strain(const ScalarField& C, double L0, double level) {
    if (!(L0 > 0.0)) throw std::invalid_argument("axial_strain: reference length must be positive");
    return std::abs(axial_extent(C, level) - L0) / L0;
}

namespace {

// area of {phi >= 0} in a triangle with vertex values p0,p1,p2 (linear)
double tri_area_above(double area, double p0, double p1, double p2) {
    // sort so p0 <= p1 <= p2
    if (p0 > p1) std::swap(p0, p1);
    if (p1 > p2) std::swap(p1, p2);
    if (p0 > p1) std::swap(p0, p1);
    if (p0 >= 0.0) return area;
    if (p2 < 0.0) return 0.0;
    if (p1 >= 0.0) {
        // one vertex below: the excluded piece is a triangle
        double f1 = p0 / (p0 - p1); // fraction along edge 0-1 where phi = 0
        double f2 = p0 / (p0 - p2);
        return area * (1.0 - f1 * f2);
    }
    // two vertices below: the included piece is a triangle at vertex p2
    double f1 = p2 / (p2 - p0);
    double f2 = p2 / (p2 - p1);
    return area * f1 * f2;
}

} // namespace

double phase_area(const ScalarField& C, double level) {
    const Grid2D& g = C.grid;
    const double tri = 0.25 * g.h * g.h; // each cell splits into 4 triangles
    double acc = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : acc)
    for (int cj = 0; cj < g.cells_y(); ++cj)
        for (int ci = 0; ci < g.cells_x(); ++ci) {
            double c00 = C(ci, cj) - level, c10 = C(ci + 1, cj) - level;
            double c01 = C(ci, cj + 1) - level, c11 = C(ci + 1, cj + 1) - level;
            double cm = 0.25 * (c00 + c10 + c01 + c11);
            acc += tri_area_above(tri, c00, c10, cm);
            acc += tri_area_above(tri, c10, c11, cm);
            acc += tri_area_above(tri, c11, c01, cm);
            acc += tri_area_above(tri, c01, c00, cm);
        }
    return acc;
}

ScalarField stress_fnorm(const ScalarField& C, const VectorField& vel,
                         const ScalarField& pressure, const PhaseParams& params, double eta_p) {
    check_same_grid(C.grid, vel.grid, "stress_fnorm");
    check_same_grid(C.grid, pressure.grid, "stress_fnorm");
    const Grid2D& g = C.grid;
    ScalarField sx(g);
    ScalarField comp(g);
    comp.v = vel.x;
    VectorField gux = grad(comp);
    comp.v = vel.y;
    VectorField guy = grad(comp);
    VectorField gc = grad(C);
#pragma omp parallel for schedule(static)
    for (int n = 0; n < g.nodes(); ++n) {
        double eta = eta_eff(C.v[n], eta_p, params);
        double dxx = 2.0 * gux.x[n];
        double dyy = 2.0 * guy.y[n];
        double dxy = gux.y[n] + guy.x[n];
        double c = C.v[n];
        double f = params.alpha * c * c * (1.0 - c) * (1.0 - c) +
                   0.5 * params.kappa * (gc.x[n] * gc.x[n] + gc.y[n] * gc.y[n]);
        double sxx = eta * dxx + (pressure.v[n] - f);
        double syy = eta * dyy + (pressure.v[n] - f);
        double sxy = eta * dxy;
        sx.v[n] = std::sqrt(sxx * sxx + syy * syy + 2.0 * sxy * sxy);
    }
    return sx;
}

StressStats stress_stats(const ScalarField& stress, const ScalarField& C, double level) {
    check_same_grid(stress.grid, C.grid, "stress_stats");
    StressStats st;
    const Grid2D& g = C.grid;
    double sum = 0.0, sum2 = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            int n = g.node(i, j);
            if (C.v[n] < level) continue;
            double s = stress.v[n];
            if (st.count == 0 || s > st.max) {
                st.max = s;
                st.max_x = g.x(i);
                st.max_y = g.y(j);
            }
            sum += s;
            sum2 += s * s;
            ++st.count;
        }
    }
    if (st.count > 0) {
        st.mean = sum / st.count;
        double var = std::max(0.0, sum2 / st.count - st.mean * st.mean);
        st.stddev = std::sqrt(var);
    }
    return st;
}

} // namespace sinter
