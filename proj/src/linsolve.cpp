#include "sinter/linsolve.hpp"

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <cmath>
#include <stdexcept>

namespace sinter {

namespace {

// Right-preconditioned restarted GMRES with modified Gram-Schmidt and Givens
// rotations. The preconditioner only needs a solve(Vec) method.
template <class Pre>
bool gmres(const SpMat& A, const Vec& b, const Pre& M, Vec& x, double tol, int restart,
           int max_iters, int& iters, double& rel_res) {
    const double bnorm = b.norm();
    if (bnorm == 0.0) {
        x.setZero(A.rows());
        rel_res = 0.0;
        return true;
    }
    const int m = restart;
    Eigen::MatrixXd V(A.rows(), m + 1);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m);
    Vec g(m + 1), cs(m), sn(m);
    if (x.size() != A.rows()) x.setZero(A.rows());

    while (true) {
        Vec r = b - A * x;
        double beta = r.norm();
        rel_res = beta / bnorm;
        if (rel_res < tol) return true;
        if (iters >= max_iters) return false;
        V.col(0) = r / beta;
        g.setZero();
        g(0) = beta;
        int k = 0;
        for (int j = 0; j < m; ++j) {
            ++iters;
            Vec w = A * M.solve(V.col(j));
            for (int i = 0; i <= j; ++i) {
                H(i, j) = w.dot(V.col(i));
                w.noalias() -= H(i, j) * V.col(i);
            }
            H(j + 1, j) = w.norm();
            if (H(j + 1, j) > 0.0) V.col(j + 1) = w / H(j + 1, j);
            for (int i = 0; i < j; ++i) {
                double t = cs(i) * H(i, j) + sn(i) * H(i + 1, j);
                H(i + 1, j) = -sn(i) * H(i, j) + cs(i) * H(i + 1, j);
                H(i, j) = t;
            }
            double denom = std::hypot(H(j, j), H(j + 1, j));
            if (denom == 0.0) { k = j + 1; break; }
            cs(j) = H(j, j) / denom;
            sn(j) = H(j + 1, j) / denom;
            H(j, j) = denom;
            H(j + 1, j) = 0.0;
            g(j + 1) = -sn(j) * g(j);
            g(j) = cs(j) * g(j);
            k = j + 1;
            rel_res = std::abs(g(j + 1)) / bnorm;
            if (rel_res < tol || iters >= max_iters) break;
        }
        if (k > 0) {
            Vec y = H.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
            x.noalias() += M.solve(V.leftCols(k) * y);
        }
        if (rel_res < tol) { // recheck against the true residual below on loop entry
            Vec r2 = b - A * x;
            rel_res = r2.norm() / bnorm;
            if (rel_res < tol) return true;
        }
        if (iters >= max_iters) return false;
    }
}

struct ExactLU {
    Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
    Vec solve(const Vec& v) const { return lu.solve(v); }
};

struct ExactLDLT {
    Eigen::SimplicialLDLT<SpMat, Eigen::Lower> ldlt;
    Vec solve(const Vec& v) const { return ldlt.solve(v); }
};

struct IncLU {
    Eigen::IncompleteLUT<double> ilu;
    Vec solve(const Vec& v) const { return ilu.solve(v); }
};

} // namespace

struct LaggedLU::Impl {
    Options opt;
    ExactLU exact;
    ExactLDLT sym;
    IncLU inc;
    bool analyzed = false;
    bool have = false;

    void factorize(const SpMat& A) {
        if (opt.incomplete) {
            inc.ilu.setDroptol(opt.ilut_droptol);
            inc.ilu.setFillfactor(opt.ilut_fill);
            inc.ilu.compute(A);
            if (inc.ilu.info() != Eigen::Success)
                throw std::runtime_error("incomplete LU factorisation failed");
        } else if (opt.symmetric) {
            if (!analyzed) {
                sym.ldlt.analyzePattern(A);
                analyzed = true;
            }
            sym.ldlt.factorize(A);
            if (sym.ldlt.info() != Eigen::Success)
                throw std::runtime_error("LDLT factorisation failed (system not symmetric?)");
        } else {
            if (!analyzed) {
                exact.lu.analyzePattern(A);
                analyzed = true;
            }
            exact.lu.factorize(A);
            if (exact.lu.info() != Eigen::Success)
                throw std::runtime_error("sparse LU factorisation failed (singular system?)");
        }
        have = true;
    }

    template <class Pre>
    Vec run(const SpMat& A, const Vec& b, const Pre& M, SolveStats* stats, const Vec* x0) {
        SolveStats st;
        Vec x;
        if (x0 && x0->size() == A.rows()) x = *x0;
        bool fresh = !have;
        if (!have) {
            factorize(A);
            st.refactored = true;
        }
        // On an exact, fresh factorisation a direct solve plus one refinement
        // step is cheaper than GMRES and normally hits machine precision.
        if (!opt.incomplete && st.refactored) {
            x = M.solve(b);
            Vec r = b - A * x;
            x += M.solve(r);
            st.residual = (b - A * x).norm() / (b.norm() > 0 ? b.norm() : 1.0);
            if (st.residual < opt.tol) {
                if (stats) *stats = st;
                return x;
            }
        }
        int budget = fresh ? opt.restart * opt.max_cycles : opt.stale_trigger;
        bool ok = gmres(A, b, M, x, opt.tol, opt.restart, budget, st.iterations, st.residual);
        if (!ok && !fresh) {
            factorize(A);
            st.refactored = true;
            if (!opt.incomplete) {
                x = M.solve(b);
                Vec r = b - A * x;
                x += M.solve(r);
                st.residual = (b - A * x).norm() / (b.norm() > 0 ? b.norm() : 1.0);
                ok = st.residual < opt.tol;
            }
            if (!ok)
                ok = gmres(A, b, M, x, opt.tol, opt.restart, opt.restart * opt.max_cycles,
                           st.iterations, st.residual);
        }
        if (!std::isfinite(st.residual) || st.residual > 100.0 * opt.tol)
            throw std::runtime_error("linear solve stalled, relative residual " +
                                     std::to_string(st.residual));
        if (stats) *stats = st;
        return x;
    }

    Vec solve(const SpMat& A, const Vec& b, SolveStats* stats, const Vec* x0) {
        if (opt.always_refactor) have = false;
        if (opt.incomplete) return run(A, b, inc, stats, x0);
        if (opt.symmetric) return run(A, b, sym, stats, x0);
        return run(A, b, exact, stats, x0);
    }
};

LaggedLU::LaggedLU() : LaggedLU(Options{}) {}
LaggedLU::LaggedLU(Options opt) : impl_(std::make_unique<Impl>()) { impl_->opt = opt; }
LaggedLU::~LaggedLU() = default;
LaggedLU::LaggedLU(LaggedLU&&) noexcept = default;
LaggedLU& LaggedLU::operator=(LaggedLU&&) noexcept = default;

void LaggedLU::reset() {
    impl_->have = false;
    impl_->analyzed = false;
}

Vec LaggedLU::solve(const SpMat& A, const Vec& b, SolveStats* stats, const Vec* x0) {
    return impl_->solve(A, b, stats, x0);
}

const LaggedLU::Options& LaggedLU::options() const { return impl_->opt; }
LaggedLU::Options& LaggedLU::options() { return impl_->opt; }

} // namespace sinter
