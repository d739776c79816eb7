#include "sinter/fem.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "sinter/materials.hpp"

namespace sinter::fem {

namespace {

// ---------------------------------------------------------- shape tables
// Reference square [0,1]^2, 3x3 tensor Gauss rule.

constexpr int kQ = 9; // quadrature points
constexpr double kG3p[3] = {0.1127016653792583, 0.5, 0.8872983346207417};
constexpr double kG3w[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

struct ShapeTab {
    // [quad point][local node]
    double n1[kQ][4], d1s[kQ][4], d1t[kQ][4];   // bilinear
    double n2[kQ][9], d2s[kQ][9], d2t[kQ][9];   // biquadratic
    double w[kQ];                                // tensor weights
};

ShapeTab build_tab() {
    ShapeTab T{};
    auto l2 = [](int a, double x) { // quadratic Lagrange on {0, 1/2, 1}
        switch (a) {
            case 0: return 2.0 * x * x - 3.0 * x + 1.0;
            case 1: return 4.0 * x - 4.0 * x * x;
            default: return 2.0 * x * x - x;
        }
    };
    auto dl2 = [](int a, double x) {
        switch (a) {
            case 0: return 4.0 * x - 3.0;
            case 1: return 4.0 - 8.0 * x;
            default: return 4.0 * x - 1.0;
        }
    };
    for (int qt = 0; qt < 3; ++qt) {
        for (int qs = 0; qs < 3; ++qs) {
            int q = qt * 3 + qs;
            double s = kG3p[qs], t = kG3p[qt];
            T.w[q] = kG3w[qs] * kG3w[qt];
            const double ns[2] = {1.0 - s, s}, nt[2] = {1.0 - t, t};
            const double ds[2] = {-1.0, 1.0};
            for (int b = 0; b < 2; ++b)
                for (int a = 0; a < 2; ++a) {
                    int loc = b * 2 + a;
                    T.n1[q][loc] = ns[a] * nt[b];
                    T.d1s[q][loc] = ds[a] * nt[b];
                    T.d1t[q][loc] = ns[a] * ds[b];
                }
            for (int b = 0; b < 3; ++b)
                for (int a = 0; a < 3; ++a) {
                    int loc = b * 3 + a;
                    T.n2[q][loc] = l2(a, s) * l2(b, t);
                    T.d2s[q][loc] = dl2(a, s) * l2(b, t);
                    T.d2t[q][loc] = l2(a, s) * dl2(b, t);
                }
        }
    }
    return T;
}

const ShapeTab& tab() {
    static const ShapeTab T = build_tab();
    return T;
}

// Unit-square bilinear stiffness (scale invariant in 2D), local order
// (0,0),(1,0),(0,1),(1,1).
constexpr double kQ1Stiff[4][4] = {
    {2.0 / 3.0, -1.0 / 6.0, -1.0 / 6.0, -1.0 / 3.0},
    {-1.0 / 6.0, 2.0 / 3.0, -1.0 / 3.0, -1.0 / 6.0},
    {-1.0 / 6.0, -1.0 / 3.0, 2.0 / 3.0, -1.0 / 6.0},
    {-1.0 / 3.0, -1.0 / 6.0, -1.0 / 6.0, 2.0 / 3.0}};

// Consistent bilinear mass on a square cell, times 36/h^2.
constexpr double kQ1Mass36[4][4] = {
    {4, 2, 2, 1}, {2, 4, 1, 2}, {2, 1, 4, 2}, {1, 2, 2, 4}};

// --------------------------------------------------------- pattern helpers

double* sp_entry(SpMat& A, int r, int c) {
    const int* ri = A.innerIndexPtr();
    const int lo = A.outerIndexPtr()[c];
    const int hi = A.outerIndexPtr()[c + 1];
    const int* it = std::lower_bound(ri + lo, ri + hi, r);
    assert(it != ri + hi && *it == r && "entry outside pattern");
    return A.valuePtr() + (it - ri);
}

struct Range {
    int lo, hi; // inclusive
};

// Lattice neighbourhood of lattice coordinate I: one element span for
// bilinear or odd (edge/centre) biquadratic coordinates, two for even.
Range lat_nbr(int I, int n, bool th) {
    int lo = (th && (I % 2 == 0)) ? I - 2 : I - 1;
    int hi = (th && (I % 2 == 0)) ? I + 2 : I + 1;
    return {std::max(0, lo), std::min(n - 1, hi)};
}

// Element columns containing lattice coordinate I (ncells_total cells).
Range elems_of(int I, int ncells, bool th) {
    int e = th ? I / 2 : I;
    int lo = (!th || I % 2 == 0) ? e - 1 : e;
    int hi = (!th || I % 2 == 0) ? e : e; // odd biquadratic coords sit inside one element
    if (!th) { lo = I - 1; hi = I; }
    return {std::max(0, lo), std::min(ncells - 1, hi)};
}

void build_pattern(int n, const std::function<void(int, std::vector<int>&)>& rows_of, SpMat& A) {
    A.resize(n, n);
    Eigen::VectorXi counts(n);
    std::vector<int> rows;
    for (int c = 0; c < n; ++c) {
        rows.clear();
        rows_of(c, rows);
        counts[c] = static_cast<int>(rows.size());
    }
    A.reserve(counts);
    for (int c = 0; c < n; ++c) {
        rows.clear();
        rows_of(c, rows);
        for (int r : rows) A.insert(r, c) = 0.0;
    }
    A.makeCompressed();
}

} // namespace

StokesLayout::StokesLayout(const Grid2D& g, bool th, bool sx0, bool sy0)
    : grid(g), taylor_hood(th), sym_x0(sx0), sym_y0(sy0) {
    vnx = th ? 2 * g.nx - 1 : g.nx;
    vny = th ? 2 * g.ny - 1 : g.ny;
    np = g.nodes();
    ndof = 2 * vnx * vny + np;
}

SpMat stokes_pattern(const StokesLayout& L) {
    const Grid2D& g = L.grid;
    const bool th = L.taylor_hood;
    SpMat A;
    auto rows_of = [&](int col, std::vector<int>& out) {
        const int nvel = 2 * L.vnx * L.vny;
        if (col < nvel) {
            int vn = col / 2;
            int I = vn % L.vnx, J = vn / L.vnx;
            Range rx = lat_nbr(I, L.vnx, th), ry = lat_nbr(J, L.vny, th);
            for (int J2 = ry.lo; J2 <= ry.hi; ++J2)
                for (int I2 = rx.lo; I2 <= rx.hi; ++I2)
                    for (int c2 = 0; c2 < 2; ++c2)
                        out.push_back(L.vel_dof(L.vnode(I2, J2), c2));
            Range ex = elems_of(I, g.cells_x(), th), ey = elems_of(J, g.cells_y(), th);
            for (int j2 = ey.lo; j2 <= ey.hi + 1; ++j2)
                for (int i2 = ex.lo; i2 <= ex.hi + 1; ++i2)
                    out.push_back(L.p_dof(g.node(i2, j2)));
        } else {
            int pn = col - nvel;
            int i = pn % g.nx, j = pn / g.nx;
            Range ex{std::max(0, i - 1), std::min(g.cells_x() - 1, i)};
            Range ey{std::max(0, j - 1), std::min(g.cells_y() - 1, j)};
            int f = th ? 2 : 1;
            for (int J2 = f * ey.lo; J2 <= f * (ey.hi + 1); ++J2)
                for (int I2 = f * ex.lo; I2 <= f * (ex.hi + 1); ++I2)
                    for (int c2 = 0; c2 < 2; ++c2)
                        out.push_back(L.vel_dof(L.vnode(I2, J2), c2));
            if (th) {
                out.push_back(col); // structural diagonal
            } else {
                for (int j2 = std::max(0, j - 1); j2 <= std::min(g.ny - 1, j + 1); ++j2)
                    for (int i2 = std::max(0, i - 1); i2 <= std::min(g.nx - 1, i + 1); ++i2)
                        out.push_back(L.p_dof(g.node(i2, j2)));
            }
        }
    };
    build_pattern(L.ndof, rows_of, A);
    return A;
}

SpMat ch_pattern(const CHLayout& L) {
    const Grid2D& g = L.grid;
    SpMat A;
    auto rows_of = [&](int col, std::vector<int>& out) {
        int n = col / 2;
        int i = n % g.nx, j = n / g.nx;
        for (int j2 = std::max(0, j - 1); j2 <= std::min(g.ny - 1, j + 1); ++j2)
            for (int i2 = std::max(0, i - 1); i2 <= std::min(g.nx - 1, i + 1); ++i2) {
                int m = g.node(i2, j2);
                out.push_back(2 * m);
                out.push_back(2 * m + 1);
            }
    };
    build_pattern(L.ndof, rows_of, A);
    return A;
}

SpMat mass_pattern(const Grid2D& g) {
    SpMat A;
    auto rows_of = [&](int col, std::vector<int>& out) {
        int i = col % g.nx, j = col / g.nx;
        for (int j2 = std::max(0, j - 1); j2 <= std::min(g.ny - 1, j + 1); ++j2)
            for (int i2 = std::max(0, i - 1); i2 <= std::min(g.nx - 1, i + 1); ++i2)
                out.push_back(g.node(i2, j2));
    };
    build_pattern(g.nodes(), rows_of, A);
    return A;
}

void assemble_mass(const Grid2D& g, SpMat& M) {
    if (M.rows() != g.nodes()) M = mass_pattern(g);
    std::fill(M.valuePtr(), M.valuePtr() + M.nonZeros(), 0.0);
    const double scale = g.h * g.h / 36.0;
    for (int cj = 0; cj < g.cells_y(); ++cj)
        for (int ci = 0; ci < g.cells_x(); ++ci) {
            int nodes[4] = {g.node(ci, cj), g.node(ci + 1, cj), g.node(ci, cj + 1),
                            g.node(ci + 1, cj + 1)};
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    *sp_entry(M, nodes[a], nodes[b]) += scale * kQ1Mass36[a][b];
        }
}

// ------------------------------------------------------------ Stokes cells

namespace {

struct StokesElem {
    double K[18][18];
    double B[18][4];
    double S[4][4];
    double F[18];
};

void stokes_element(const StokesLayout& L, const ScalarField& C, const ScalarField& mu,
                    const PhaseParams& pp, double eta_p, double stab_c, int ci, int cj,
                    const BodyForce& extra, StokesElem& e) {
    const ShapeTab& T = tab();
    const Grid2D& g = L.grid;
    const double h = g.h;
    const int nv = L.taylor_hood ? 9 : 4;
    const double cc[4] = {C.v[g.node(ci, cj)], C.v[g.node(ci + 1, cj)],
                          C.v[g.node(ci, cj + 1)], C.v[g.node(ci + 1, cj + 1)]};
    const double mm[4] = {mu.v[g.node(ci, cj)], mu.v[g.node(ci + 1, cj)],
                          mu.v[g.node(ci, cj + 1)], mu.v[g.node(ci + 1, cj + 1)]};
    std::fill(&e.K[0][0], &e.K[0][0] + 18 * 18, 0.0);
    std::fill(&e.B[0][0], &e.B[0][0] + 18 * 4, 0.0);
    std::fill(&e.S[0][0], &e.S[0][0] + 4 * 4, 0.0);
    std::fill(e.F, e.F + 18, 0.0);
    double eta_mean = 0.0;

    for (int q = 0; q < kQ; ++q) {
        const double jac = T.w[q] * h * h;
        double cval = 0.0, mgx = 0.0, mgy = 0.0;
        for (int a = 0; a < 4; ++a) {
            cval += T.n1[q][a] * cc[a];
            mgx += T.d1s[q][a] / h * mm[a];
            mgy += T.d1t[q][a] / h * mm[a];
        }
        const double eta = eta_eff(cval, eta_p, pp);
        eta_mean += T.w[q] * eta;

        const double* vn = L.taylor_hood ? T.n2[q] : T.n1[q];
        const double* vds = L.taylor_hood ? T.d2s[q] : T.d1s[q];
        const double* vdt = L.taylor_hood ? T.d2t[q] : T.d1t[q];

        double dx[9], dy[9];
        for (int a = 0; a < nv; ++a) {
            dx[a] = vds[a] / h;
            dy[a] = vdt[a] / h;
        }
        for (int a = 0; a < nv; ++a) {
            for (int b = 0; b < nv; ++b) {
                double gdot = dx[a] * dx[b] + dy[a] * dy[b];
                double w = eta * jac;
                // (i,j) = (0,0): gdot + dx_b*dx_a ; (0,1): dy_b? careful:
                // K[(a,i)][(b,j)] = eta * (delta_ij grad a . grad b + d_i N_b d_j N_a)
                e.K[2 * a][2 * b] += w * (gdot + dx[b] * dx[a]);
                e.K[2 * a][2 * b + 1] += w * (dx[b] * dy[a]);
                e.K[2 * a + 1][2 * b] += w * (dy[b] * dx[a]);
                e.K[2 * a + 1][2 * b + 1] += w * (gdot + dy[b] * dy[a]);
            }
            e.F[2 * a] += -jac * cval * mgx * vn[a];
            e.F[2 * a + 1] += -jac * cval * mgy * vn[a];
            for (int c = 0; c < 4; ++c) {
                e.B[2 * a][c] += jac * T.n1[q][c] * dx[a];
                e.B[2 * a + 1][c] += jac * T.n1[q][c] * dy[a];
            }
        }
        if (extra) {
            double x = g.x0 + (ci + kG3p[q % 3]) * h;
            double y = g.y0 + (cj + kG3p[q / 3]) * h;
            auto f = extra(x, y);
            for (int a = 0; a < nv; ++a) {
                e.F[2 * a] += jac * f[0] * vn[a];
                e.F[2 * a + 1] += jac * f[1] * vn[a];
            }
        }
    }
    if (!L.taylor_hood) {
        const double s = stab_c * h * h / eta_mean;
        for (int c = 0; c < 4; ++c)
            for (int d = 0; d < 4; ++d) e.S[c][d] = s * kQ1Stiff[c][d];
    }
}

void scatter_stokes(const StokesLayout& L, int ci, int cj, const StokesElem& e, SpMat& A,
                    Vec& rhs) {
    const Grid2D& g = L.grid;
    const int nv = L.taylor_hood ? 9 : 4;
    int vg[9];
    bool pin[9][2];
    if (L.taylor_hood) {
        for (int b = 0; b < 3; ++b)
            for (int a = 0; a < 3; ++a) {
                int I = 2 * ci + a, J = 2 * cj + b;
                vg[b * 3 + a] = L.vnode(I, J);
                pin[b * 3 + a][0] = L.vel_pinned(I, J, 0);
                pin[b * 3 + a][1] = L.vel_pinned(I, J, 1);
            }
    } else {
        for (int b = 0; b < 2; ++b)
            for (int a = 0; a < 2; ++a) {
                int I = ci + a, J = cj + b;
                vg[b * 2 + a] = L.vnode(I, J);
                pin[b * 2 + a][0] = L.vel_pinned(I, J, 0);
                pin[b * 2 + a][1] = L.vel_pinned(I, J, 1);
            }
    }
    int pg[4] = {g.node(ci, cj), g.node(ci + 1, cj), g.node(ci, cj + 1), g.node(ci + 1, cj + 1)};

    const int ppin = L.p_pin_dof();
    for (int a = 0; a < nv; ++a) {
        for (int i = 0; i < 2; ++i) {
            if (pin[a][i]) continue; // pinned rows become identity afterwards
            const int row = L.vel_dof(vg[a], i);
            for (int b = 0; b < nv; ++b) {
                for (int j = 0; j < 2; ++j) {
                    if (pin[b][j]) continue; // columns multiply a known zero
                    *sp_entry(A, row, L.vel_dof(vg[b], j)) += e.K[2 * a + i][2 * b + j];
                }
            }
            for (int c = 0; c < 4; ++c) {
                if (L.p_dof(pg[c]) == ppin) continue;
                *sp_entry(A, row, L.p_dof(pg[c])) += e.B[2 * a + i][c];
            }
            rhs[row] += e.F[2 * a + i];
        }
    }
    for (int c = 0; c < 4; ++c) {
        const int prow = L.p_dof(pg[c]);
        if (prow == ppin) continue;
        for (int b = 0; b < nv; ++b) {
            for (int j = 0; j < 2; ++j) {
                if (pin[b][j]) continue;
                *sp_entry(A, prow, L.vel_dof(vg[b], j)) += e.B[2 * b + j][c];
            }
        }
        if (!L.taylor_hood)
            for (int d = 0; d < 4; ++d) {
                if (L.p_dof(pg[d]) == ppin) continue;
                *sp_entry(A, prow, L.p_dof(pg[d])) -= e.S[c][d];
            }
    }
}

void finish_stokes(const StokesLayout& L, SpMat& A) {
    // identity rows for the pinned velocity components and the pinned pressure
    for (int J = 0; J < L.vny; ++J)
        for (int I = 0; I < L.vnx; ++I)
            if (L.vel_on_wall(I, J))
                for (int c = 0; c < 2; ++c)
                    if (L.vel_pinned(I, J, c)) {
                        int d = L.vel_dof(L.vnode(I, J), c);
                        *sp_entry(A, d, d) = 1.0;
                    }
    *sp_entry(A, L.p_pin_dof(), L.p_pin_dof()) = 1.0;
}

} // namespace

void assemble_stokes(const StokesLayout& L, const ScalarField& C, const ScalarField& mu,
                     const PhaseParams& p, double eta_p, double stab_c, SpMat& A, Vec& rhs,
                     const BodyForce& extra) {
    check_same_grid(L.grid, C.grid, "assemble_stokes");
    check_same_grid(L.grid, mu.grid, "assemble_stokes");
    std::fill(A.valuePtr(), A.valuePtr() + A.nonZeros(), 0.0);
    rhs.setZero(L.ndof);
    const Grid2D& g = L.grid;
    for (int color = 0; color < 4; ++color) {
        const int ox = color & 1, oy = color >> 1;
#pragma omp parallel for schedule(static)
        for (int cj = oy; cj < g.cells_y(); cj += 2) {
            StokesElem e;
            for (int ci = ox; ci < g.cells_x(); ci += 2) {
                stokes_element(L, C, mu, p, eta_p, stab_c, ci, cj, extra, e);
                scatter_stokes(L, ci, cj, e, A, rhs);
            }
        }
    }
    finish_stokes(L, A);
}

namespace serial {
// Same colored element order as the parallel version; see serial::assemble_ch.
void assemble_stokes(const StokesLayout& L, const ScalarField& C, const ScalarField& mu,
                     const PhaseParams& p, double eta_p, double stab_c, SpMat& A, Vec& rhs,
                     const BodyForce& extra) {
    check_same_grid(L.grid, C.grid, "assemble_stokes");
    check_same_grid(L.grid, mu.grid, "assemble_stokes");
    std::fill(A.valuePtr(), A.valuePtr() + A.nonZeros(), 0.0);
    rhs.setZero(L.ndof);
    const Grid2D& g = L.grid;
    StokesElem e;
    for (int color = 0; color < 4; ++color) {
        const int ox = color & 1, oy = color >> 1;
        for (int cj = oy; cj < g.cells_y(); cj += 2)
            for (int ci = ox; ci < g.cells_x(); ci += 2) {
                stokes_element(L, C, mu, p, eta_p, stab_c, ci, cj, extra, e);
                scatter_stokes(L, ci, cj, e, A, rhs);
            }
    }
    finish_stokes(L, A);
}
} // namespace serial

// -------------------------------------------------------------- transport

namespace {

struct CHElem {
    double A[8][8];
    double r[8];
};

void ch_element(const CHLayout& L, const ScalarField& C, const VectorField& vel, double dt,
                const PhaseParams& p, int ci, int cj, CHElem& e) {
    const ShapeTab& T = tab();
    const Grid2D& g = L.grid;
    const double h = g.h;
    const int nodes[4] = {g.node(ci, cj), g.node(ci + 1, cj), g.node(ci, cj + 1),
                          g.node(ci + 1, cj + 1)};
    const double s_shift = 2.0 * p.alpha;
    std::fill(&e.A[0][0], &e.A[0][0] + 64, 0.0);
    std::fill(e.r, e.r + 8, 0.0);

    for (int q = 0; q < kQ; ++q) {
        const double jac = T.w[q] * h * h;
        double cval = 0.0, ux = 0.0, uy = 0.0;
        double dxv[4], dyv[4];
        for (int a = 0; a < 4; ++a) {
            cval += T.n1[q][a] * C.v[nodes[a]];
            ux += T.n1[q][a] * vel.x[nodes[a]];
            uy += T.n1[q][a] * vel.y[nodes[a]];
            dxv[a] = T.d1s[q][a] / h;
            dyv[a] = T.d1t[q][a] / h;
        }
        const double gval = bulk_deriv(cval, p.alpha);
        for (int a = 0; a < 4; ++a) {
            const double na = T.n1[q][a];
            const double adv = ux * dxv[a] + uy * dyv[a];
            for (int b = 0; b < 4; ++b) {
                const double mass = jac * na * T.n1[q][b];
                const double lap = jac * (dxv[a] * dxv[b] + dyv[a] * dyv[b]);
                const double conv = -jac * T.n1[q][b] * adv;
                e.A[2 * a][2 * b] += mass + dt * conv;
                e.A[2 * a][2 * b + 1] += dt * p.M * lap;
                e.A[2 * a + 1][2 * b] += -p.kappa * lap - s_shift * mass;
                e.A[2 * a + 1][2 * b + 1] += mass;
            }
            e.r[2 * a] += jac * na * cval;
            e.r[2 * a + 1] += jac * na * (gval - s_shift * cval);
        }
    }
}

void scatter_ch(const CHLayout& L, int ci, int cj, const CHElem& e, SpMat& A, Vec& rhs) {
    const Grid2D& g = L.grid;
    const int nodes[4] = {g.node(ci, cj), g.node(ci + 1, cj), g.node(ci, cj + 1),
                          g.node(ci + 1, cj + 1)};
    for (int a = 0; a < 4; ++a)
        for (int fa = 0; fa < 2; ++fa) {
            const int row = 2 * nodes[a] + fa;
            for (int b = 0; b < 4; ++b)
                for (int fb = 0; fb < 2; ++fb)
                    *sp_entry(A, row, 2 * nodes[b] + fb) += e.A[2 * a + fa][2 * b + fb];
            rhs[row] += e.r[2 * a + fa];
        }
}

} // namespace

void assemble_ch(const CHLayout& L, const ScalarField& C, const VectorField& vel, double dt,
                 const PhaseParams& p, SpMat& A, Vec& rhs) {
    check_same_grid(L.grid, C.grid, "assemble_ch");
    check_same_grid(L.grid, vel.grid, "assemble_ch");
    std::fill(A.valuePtr(), A.valuePtr() + A.nonZeros(), 0.0);
    rhs.setZero(L.ndof);
    const Grid2D& g = L.grid;
    for (int color = 0; color < 4; ++color) {
        const int ox = color & 1, oy = color >> 1;
#pragma omp parallel for schedule(static)
        for (int cj = oy; cj < g.cells_y(); cj += 2) {
            CHElem e;
            for (int ci = ox; ci < g.cells_x(); ci += 2) {
                ch_element(L, C, vel, dt, p, ci, cj, e);
                scatter_ch(L, ci, cj, e, A, rhs);
            }
        }
    }
}

namespace serial {
// Visits elements in the same colored order as the parallel version, so the
// accumulated entries carry identical rounding and the bits can be compared.
void assemble_ch(const CHLayout& L, const ScalarField& C, const VectorField& vel, double dt,
                 const PhaseParams& p, SpMat& A, Vec& rhs) {
    check_same_grid(L.grid, C.grid, "assemble_ch");
    check_same_grid(L.grid, vel.grid, "assemble_ch");
    std::fill(A.valuePtr(), A.valuePtr() + A.nonZeros(), 0.0);
    rhs.setZero(L.ndof);
    const Grid2D& g = L.grid;
    CHElem e;
    for (int color = 0; color < 4; ++color) {
        const int ox = color & 1, oy = color >> 1;
        for (int cj = oy; cj < g.cells_y(); cj += 2)
            for (int ci = ox; ci < g.cells_x(); ci += 2) {
                ch_element(L, C, vel, dt, p, ci, cj, e);
                scatter_ch(L, ci, cj, e, A, rhs);
            }
    }
}
} // namespace serial

Vec potential_rhs(const Grid2D& g, const ScalarField& C, const PhaseParams& p) {
    const ShapeTab& T = tab();
    Vec r = Vec::Zero(g.nodes());
    const double h = g.h;
    for (int cj = 0; cj < g.cells_y(); ++cj)
        for (int ci = 0; ci < g.cells_x(); ++ci) {
            const int nodes[4] = {g.node(ci, cj), g.node(ci + 1, cj), g.node(ci, cj + 1),
                                  g.node(ci + 1, cj + 1)};
            for (int q = 0; q < kQ; ++q) {
                const double jac = T.w[q] * h * h;
                double cval = 0.0, cgx = 0.0, cgy = 0.0;
                for (int a = 0; a < 4; ++a) {
                    cval += T.n1[q][a] * C.v[nodes[a]];
                    cgx += T.d1s[q][a] / h * C.v[nodes[a]];
                    cgy += T.d1t[q][a] / h * C.v[nodes[a]];
                }
                const double gval = bulk_deriv(cval, p.alpha);
                for (int a = 0; a < 4; ++a)
                    r[nodes[a]] += jac * (gval * T.n1[q][a] +
                                          p.kappa * (cgx * T.d1s[q][a] + cgy * T.d1t[q][a]) / h);
            }
        }
    return r;
}

} // namespace sinter::fem
