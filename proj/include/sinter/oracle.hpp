#pragma once
// Closed-form benchmark for the coalescence of two equal circular cylinders
// in creeping flow. The shape family is parametrised by m in (0,1]:
//   neck        X*(m)  = (1 - m) / sqrt(1 + m^2)
//   time        t*(m)  = (pi/sqrt(2)) * integral_m^1 dm' /
//                        ( m' * sqrt(1 + m'^2) * K(m') )
// with K the complete elliptic integral of the first kind in the modulus
// convention, and t* = gamma * t / (mu * R0). m = 1 is the initial tangent
// pair (X* = 0); m -> 0 approaches the merged disk (X* -> 1, radius sqrt(2) R0).

#include <functional>
#include <vector>

namespace sinter {

// Piecewise-linear curve x(t) with strictly increasing t.
struct Curve {
    std::vector<double> t;
    std::vector<double> x;

    double at(double tq) const; // linear interpolation, clamped ends
};

// Complete elliptic integral of the first kind, modulus k in [0,1),
// by the arithmetic-geometric mean.
double elliptic_K(double k);

// Adaptive Simpson quadrature to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol);

// The reference curve, sampled at n+1 neck values uniform in X* from 0 to
// X_max. Each time increment is integrated adaptively to tolerance tol.
Curve hopper_curve(int n = 400, double X_max = 0.999, double tol = 1e-10);

// sup_t |a(t) - b(t)| over the overlap of the two time ranges, evaluated on
// the union of their knots (exact for piecewise-linear curves).
double curve_distance(const Curve& a, const Curve& b);

// Convenience inversions on a sampled curve.
double curve_first_time_reaching(const Curve& c, double level); // +inf if never

} // namespace sinter
