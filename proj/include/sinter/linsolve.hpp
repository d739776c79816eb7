#pragma once
// Sparse solves for the time loop. Matrices change slightly from step to
// step, so a full LU of an earlier matrix stays an excellent preconditioner:
// each solve runs restarted GMRES against the current matrix using the stored
// factorisation, and refactorises only when the iteration count degrades.
// Above a size threshold the factorisation is an incomplete LU instead,
// trading iterations for memory.

#include <Eigen/Sparse>
#include <memory>

namespace sinter {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

struct SolveStats {
    int iterations = 0;     // Krylov iterations spent (0 for a fresh direct solve)
    bool refactored = false;
    double residual = 0.0;  // final ||b - A x|| / ||b||
};

class LaggedLU {
  public:
    struct Options {
        double tol = 1.0e-9;
        int restart = 50;
        int max_cycles = 6;      // GMRES cycles after a fresh factorisation
        int stale_trigger = 40;  // iterations allowed on a stale factorisation
        bool always_refactor = false;
        bool symmetric = false;  // LDLT instead of LU; valid for quasi-definite
                                 // systems (saddle point with a negative definite
                                 // stabilised pressure block), half the fill
        bool incomplete = false; // ILU(tau) instead of exact LU
        double ilut_droptol = 1.0e-5;
        int ilut_fill = 30;
    };

    LaggedLU();
    explicit LaggedLU(Options opt);
    ~LaggedLU();
    LaggedLU(LaggedLU&&) noexcept;
    LaggedLU& operator=(LaggedLU&&) noexcept;

    void reset(); // drop the factorisation (after a pattern change)

    // x0 is an optional warm start for the iterative path (ignored by the
    // direct path); pass the previous time step's solution when available.
    Vec solve(const SpMat& A, const Vec& b, SolveStats* stats = nullptr,
              const Vec* x0 = nullptr);

    const Options& options() const;
    Options& options();

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace sinter
