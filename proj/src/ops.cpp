#include "sinter/ops.hpp"

#include <cmath>
#include <vector>

namespace sinter {

namespace {

// Corner weight of the exact bilinear integral: interior 1, edge 1/2, corner 1/4.
inline double node_weight(const Grid2D& g, int i, int j) {
    double w = 1.0;
    if (i == 0 || i == g.nx - 1) w *= 0.5;
    if (j == 0 || j == g.ny - 1) w *= 0.5;
    return w;
}

// Recovered derivative along one grid line: central inside, one-sided at ends.
inline double line_deriv(const double* f, int i, int n, int stride, double h) {
    if (i == 0) return (f[stride] - f[0]) / h;
    if (i == n - 1) return (f[i * stride] - f[(i - 1) * stride]) / h;
    return (f[(i + 1) * stride] - f[(i - 1) * stride]) / (2.0 * h);
}

// 2x2 Gauss on the reference square [-1,1]^2, weights 1 each.
constexpr double kGauss2 = 0.57735026918962576; // 1/sqrt(3)

struct CellVals {
    double f00, f10, f01, f11;
};

inline CellVals cell_vals(const ScalarField& f, int ci, int cj) {
    const Grid2D& g = f.grid;
    return {f.v[g.node(ci, cj)], f.v[g.node(ci + 1, cj)],
            f.v[g.node(ci, cj + 1)], f.v[g.node(ci + 1, cj + 1)]};
}

inline double bilerp(const CellVals& c, double s, double t) // s,t in [0,1]
{
    return c.f00 * (1 - s) * (1 - t) + c.f10 * s * (1 - t) +
           c.f01 * (1 - s) * t + c.f11 * s * t;
}

inline double bilerp_ds(const CellVals& c, double t) {
    return (c.f10 - c.f00) * (1 - t) + (c.f11 - c.f01) * t;
}

inline double bilerp_dt(const CellVals& c, double s) {
    return (c.f01 - c.f00) * (1 - s) + (c.f11 - c.f10) * s;
}

// Element-quadrature core shared by the two bilinear forms. Accumulates
// sum over Gauss points of (div v)*q or (v . grad q), element-local.
template <bool DivForm>
double quad_form_cell(const VectorField& v, const ScalarField& q, int ci, int cj) {
    const Grid2D& g = q.grid;
    const double h = g.h;
    CellVals qx = cell_vals(q, ci, cj);
    CellVals vx{v.x[g.node(ci, cj)], v.x[g.node(ci + 1, cj)],
                v.x[g.node(ci, cj + 1)], v.x[g.node(ci + 1, cj + 1)]};
    CellVals vy{v.y[g.node(ci, cj)], v.y[g.node(ci + 1, cj)],
                v.y[g.node(ci, cj + 1)], v.y[g.node(ci + 1, cj + 1)]};
    const double jac = 0.25 * h * h; // dx dy per unit (s,t) times Gauss weight 1
    double acc = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            double s = 0.5 * (1.0 + (a ? kGauss2 : -kGauss2));
            double t = 0.5 * (1.0 + (b ? kGauss2 : -kGauss2));
            if constexpr (DivForm) {
                double divv = (bilerp_ds(vx, t) + bilerp_dt(vy, s)) / h;
                acc += divv * bilerp(qx, s, t) * jac;
            } else {
                double gx = bilerp_ds(qx, t) / h;
                double gy = bilerp_dt(qx, s) / h;
                acc += (bilerp(vx, s, t) * gx + bilerp(vy, s, t) * gy) * jac;
            }
        }
    }
    return acc;
}

// Reductions accumulate one partial per grid row, then combine the rows in
// order. The result is bitwise independent of the thread count, and the
// serial twins share the two-phase structure so their bits match too.
template <bool DivForm>
double quad_form_serial(const VectorField& v, const ScalarField& q) {
    check_same_grid(v.grid, q.grid, "quad form");
    const Grid2D& g = q.grid;
    std::vector<double> row(g.cells_y(), 0.0);
    for (int cj = 0; cj < g.cells_y(); ++cj)
        for (int ci = 0; ci < g.cells_x(); ++ci)
            row[cj] += quad_form_cell<DivForm>(v, q, ci, cj);
    double acc = 0.0;
    for (double r : row) acc += r;
    return acc;
}

template <bool DivForm>
double quad_form_parallel(const VectorField& v, const ScalarField& q) {
    check_same_grid(v.grid, q.grid, "quad form");
    const Grid2D& g = q.grid;
    std::vector<double> row(g.cells_y(), 0.0);
#pragma omp parallel for schedule(static)
    for (int cj = 0; cj < g.cells_y(); ++cj)
        for (int ci = 0; ci < g.cells_x(); ++ci)
            row[cj] += quad_form_cell<DivForm>(v, q, ci, cj);
    double acc = 0.0;
    for (double r : row) acc += r;
    return acc;
}

} // namespace

namespace serial {

double integrate(const ScalarField& f) {
    const Grid2D& g = f.grid;
    std::vector<double> row(g.ny, 0.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            row[j] += node_weight(g, i, j) * f.v[g.node(i, j)];
    double acc = 0.0;
    for (double r : row) acc += r;
    return acc * g.h * g.h;
}

VectorField grad(const ScalarField& f) {
    const Grid2D& g = f.grid;
    VectorField out(g);
    for (int j = 0; j < g.ny; ++j) {
        const double* row = f.v.data() + g.node(0, j);
        for (int i = 0; i < g.nx; ++i) {
            out.x[g.node(i, j)] = line_deriv(row, i, g.nx, 1, g.h);
            out.y[g.node(i, j)] = line_deriv(f.v.data() + i, j, g.ny, g.nx, g.h);
        }
    }
    return out;
}

ScalarField div(const VectorField& v) {
    const Grid2D& g = v.grid;
    ScalarField out(g);
    for (int j = 0; j < g.ny; ++j) {
        const double* row = v.x.data() + g.node(0, j);
        for (int i = 0; i < g.nx; ++i) {
            out.v[g.node(i, j)] = line_deriv(row, i, g.nx, 1, g.h) +
                                  line_deriv(v.y.data() + i, j, g.ny, g.nx, g.h);
        }
    }
    return out;
}

double integral_div_times(const VectorField& v, const ScalarField& q) {
    return quad_form_serial<true>(v, q);
}

double integral_dot_grad(const VectorField& v, const ScalarField& q) {
    return quad_form_serial<false>(v, q);
}

double max_norm(const VectorField& v) {
    double m = 0.0;
    for (std::size_t k = 0; k < v.x.size(); ++k)
        m = std::max(m, std::hypot(v.x[k], v.y[k]));
    return m;
}

} // namespace serial

double integrate(const ScalarField& f) {
    const Grid2D& g = f.grid;
    std::vector<double> row(g.ny, 0.0);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            row[j] += node_weight(g, i, j) * f.v[g.node(i, j)];
    double acc = 0.0;
    for (double r : row) acc += r;
    return acc * g.h * g.h;
}

VectorField grad(const ScalarField& f) {
    const Grid2D& g = f.grid;
    VectorField out(g);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < g.ny; ++j) {
        const double* row = f.v.data() + g.node(0, j);
        for (int i = 0; i < g.nx; ++i) {
            out.x[g.node(i, j)] = line_deriv(row, i, g.nx, 1, g.h);
            out.y[g.node(i, j)] = line_deriv(f.v.data() + i, j, g.ny, g.nx, g.h);
        }
    }
    return out;
}

ScalarField div(const VectorField& v) {
    const Grid2D& g = v.grid;
    ScalarField out(g);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < g.ny; ++j) {
        const double* row = v.x.data() + g.node(0, j);
        for (int i = 0; i < g.nx; ++i) {
            out.v[g.node(i, j)] = line_deriv(row, i, g.nx, 1, g.h) +
                                  line_deriv(v.y.data() + i, j, g.ny, g.nx, g.h);
        }
    }
    return out;
}

double integral_div_times(const VectorField& v, const ScalarField& q) {
    return quad_form_parallel<true>(v, q);
}

double integral_dot_grad(const VectorField& v, const ScalarField& q) {
    return quad_form_parallel<false>(v, q);
}

double max_norm(const VectorField& v) {
#ifdef _OPENMP
    double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
    for (std::size_t k = 0; k < v.x.size(); ++k)
        m = std::max(m, std::hypot(v.x[k], v.y[k]));
    return m;
#else
    return serial::max_norm(v);
#endif
}

} // namespace sinter
