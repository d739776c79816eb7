#pragma once
// Conserved phase field: double-well energy parameters and their exact
// correspondence with surface tension and interface width,
//   gamma = sqrt(2*kappa*alpha)/6,   delta = sqrt(8*kappa/alpha),
// plus the bulk chemical potential and the discrete free energy.

#include <cmath>

#include "sinter/grid.hpp"

namespace sinter {

struct PhaseParams {
    double alpha = 0.0; // double-well height coefficient
    double kappa = 0.0; // gradient energy coefficient
    double M = 1.0e-3;  // mobility
    double omega = 4.0; // viscosity interpolation sharpening, must exceed 3
    double beta = 1.0e-3; // residual viscosity ratio of the ambient phase
};

struct SurfaceScales {
    double gamma_sf = 0.0; // surface tension
    double delta_sf = 0.0; // equilibrium interface width
};

// Invert the (gamma, delta) map: alpha = 12*gamma/delta, kappa = 1.5*gamma*delta.
PhaseParams params_from_physics(double gamma_sf, double delta_sf, double M = 1.0e-3,
                                double omega = 4.0, double beta = 1.0e-3);

SurfaceScales params_to_physics(const PhaseParams& p);

// Derivative of the bulk well alpha*C^2*(1-C)^2.
inline double bulk_deriv(double C, double alpha) {
    return 2.0 * alpha * C * (1.0 - C) * (1.0 - 2.0 * C);
}

// Equilibrium profile across a flat interface; d is the signed distance into
// the dense phase. A disk initialised with it carries energy close to
// gamma times its perimeter, split evenly between well and gradient parts.
inline double interface_profile(double d, double delta_sf) {
    return 0.5 * (1.0 + std::tanh(2.0 * d / delta_sf));
}

// Total free energy of the bilinear interpolant, well plus gradient part,
// by 2x2 Gauss quadrature per cell.
double free_energy(const ScalarField& C, const PhaseParams& p);

namespace serial {
double free_energy(const ScalarField& C, const PhaseParams& p);
}

} // namespace sinter
