#include "sinter/phasefield.hpp"

#include <stdexcept>
#include <vector>

namespace sinter {

PhaseParams params_from_physics(double gamma_sf, double delta_sf, double M, double omega,
                                double beta) {
    if (!(gamma_sf > 0.0) || !(delta_sf > 0.0))
        throw std::invalid_argument("params_from_physics: gamma and delta must be positive");
    if (!(M > 0.0)) throw std::invalid_argument("params_from_physics: mobility must be positive");
    if (!(omega > 3.0))
        throw std::invalid_argument("params_from_physics: omega must exceed 3 so the "
                                    "interpolated viscosity stays monotone");
    if (!(beta > 0.0) || beta >= 1.0)
        throw std::invalid_argument("params_from_physics: beta must lie in (0,1)");
    PhaseParams p;
    p.alpha = 12.0 * gamma_sf / delta_sf;
    p.kappa = 1.5 * gamma_sf * delta_sf;
    p.M = M;
    p.omega = omega;
    p.beta = beta;
    return p;
}

SurfaceScales params_to_physics(const PhaseParams& p) {
    if (!(p.alpha > 0.0) || !(p.kappa > 0.0))
        throw std::invalid_argument("params_to_physics: alpha and kappa must be positive");
    SurfaceScales s;
    s.gamma_sf = std::sqrt(2.0 * p.kappa * p.alpha) / 6.0;
    s.delta_sf = std::sqrt(8.0 * p.kappa / p.alpha);
    return s;
}

namespace {

constexpr double kGauss2 = 0.57735026918962576;

// Energy contribution of one cell at 2x2 Gauss points of the bilinear patch.
inline double cell_energy(const ScalarField& C, int ci, int cj, double alpha, double kappa) {
    const Grid2D& g = C.grid;
    const double h = g.h;
    const double f00 = C.v[g.node(ci, cj)], f10 = C.v[g.node(ci + 1, cj)];
    const double f01 = C.v[g.node(ci, cj + 1)], f11 = C.v[g.node(ci + 1, cj + 1)];
    const double jac = 0.25 * h * h;
    double acc = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            double s = 0.5 * (1.0 + (a ? kGauss2 : -kGauss2));
            double t = 0.5 * (1.0 + (b ? kGauss2 : -kGauss2));
            double c = f00 * (1 - s) * (1 - t) + f10 * s * (1 - t) + f01 * (1 - s) * t +
                       f11 * s * t;
            double gx = ((f10 - f00) * (1 - t) + (f11 - f01) * t) / h;
            double gy = ((f01 - f00) * (1 - s) + (f11 - f10) * s) / h;
            double well = alpha * c * c * (1.0 - c) * (1.0 - c);
            acc += (well + 0.5 * kappa * (gx * gx + gy * gy)) * jac;
        }
    }
    return acc;
}

} // namespace

namespace serial {

// Row-blocked reduction: bitwise independent of the thread count, and the
// serial twin shares the structure so the bits match.
double free_energy(const ScalarField& C, const PhaseParams& p) {
    const Grid2D& g = C.grid;
    std::vector<double> row(g.cells_y(), 0.0);
    for (int cj = 0; cj < g.cells_y(); ++cj)
        for (int ci = 0; ci < g.cells_x(); ++ci)
            row[cj] += cell_energy(C, ci, cj, p.alpha, p.kappa);
    double acc = 0.0;
    for (double r : row) acc += r;
    return acc;
}

} // namespace serial

double free_energy(const ScalarField& C, const PhaseParams& p) {
    const Grid2D& g = C.grid;
    std::vector<double> row(g.cells_y(), 0.0);
#pragma omp parallel for schedule(static)
    for (int cj = 0; cj < g.cells_y(); ++cj)
        for (int ci = 0; ci < g.cells_x(); ++ci)
            row[cj] += cell_energy(C, ci, cj, p.alpha, p.kappa);
    double acc = 0.0;
    for (double r : row) acc += r;
    return acc;
}

} // namespace sinter
