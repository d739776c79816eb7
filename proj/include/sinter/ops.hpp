#pragma once
// Field operators on the structured grid: exact integration of the bilinear
// interpolant, nodal gradient/divergence recovery, and element-quadrature
// bilinear forms. Each operator has an OpenMP kernel (default) and a serial
// reference twin in sinter::serial used by tests and the kernel benchmark.

#include "sinter/grid.hpp"

namespace sinter {

// Integral of the piecewise-bilinear interpolant over the whole domain.
// Equals 2x2 Gauss per cell; reduces to corner-weighted nodal sums.
double integrate(const ScalarField& f);

// Nodal gradient recovered by averaging the element shape-function gradient
// evaluated at each shared corner: central differences inside, one-sided on
// the boundary. Exact for fields linear in x and y.
VectorField grad(const ScalarField& f);

// Nodal divergence with the same recovery rule, applied per component.
ScalarField div(const VectorField& v);

// Quadrature-level forms, evaluated element by element at 2x2 Gauss points
// with element-local derivatives. For q vanishing on the boundary the two
// are exact negatives of each other (discrete integration by parts).
double integral_div_times(const VectorField& v, const ScalarField& q);
double integral_dot_grad(const VectorField& v, const ScalarField& q);

// max over nodes of the Euclidean vector norm
double max_norm(const VectorField& v);

namespace serial {
double integrate(const ScalarField& f);
VectorField grad(const ScalarField& f);
ScalarField div(const VectorField& v);
double integral_div_times(const VectorField& v, const ScalarField& q);
double integral_dot_grad(const VectorField& v, const ScalarField& q);
double max_norm(const VectorField& v);
} // namespace serial

} // namespace sinter
