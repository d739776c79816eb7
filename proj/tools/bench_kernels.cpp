// Times the OpenMP kernels against their serial reference twins on a
// representative two-particle state, and checks that both produce identical
// bits (the parallel scatter is ordered, so results must not depend on the
// thread count).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sinter/fem.hpp"
#include "sinter/geometry.hpp"
#include "sinter/materials.hpp"
#include "sinter/ops.hpp"
#include "sinter/phasefield.hpp"

using namespace sinter;
using fem::Vec;

namespace {

double seconds(const std::function<void()>& fn, int reps) {
    auto t0 = std::chrono::steady_clock::now();
    for (int k = 0; k < reps; ++k) fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void report(const char* name, double t_par, double t_ser, bool identical) {
    std::printf("%-18s %10.3f ms %10.3f ms %7.2fx   %s\n", name, 1e3 * t_par, 1e3 * t_ser,
                t_ser / t_par, identical ? "identical" : "DIFFER");
}

bool same_bits(const Vec& a, const Vec& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

} // namespace

int main(int argc, char** argv) {
    double cells_per_R = 30.0;
    int reps = 5;
    for (int k = 1; k < argc; ++k) {
        std::string a = argv[k];
        auto next = [&]() -> double {
            if (k + 1 >= argc) {
                std::fprintf(stderr, "missing value after %s\n", a.c_str());
                std::exit(2);
            }
            return std::atof(argv[++k]);
        };
        if (a == "--cells-per-R") cells_per_R = next();
        else if (a == "--reps") reps = static_cast<int>(next());
#ifdef _OPENMP
        else if (a == "--threads") omp_set_num_threads(static_cast<int>(next()));
#endif
        else {
            std::fprintf(stderr,
                         "usage: bench_kernels [--cells-per-R N] [--reps N] [--threads N]\n");
            return 2;
        }
    }

    const double R = 30.0;
    Scene s = scene_two_equal(R);
    Grid2D g = make_grid(s, R / cells_per_R);
    ScalarField C = initial_field(s, g, 3.0 * g.h);
    PhaseParams pp = params_from_physics(30.0, 3.0 * g.h);
    VectorField vel(g);
    for (int n = 0; n < g.nodes(); ++n) {
        vel.x[n] = std::sin(0.01 * n);
        vel.y[n] = std::cos(0.013 * n);
    }

#ifdef _OPENMP
    std::printf("grid %dx%d nodes, %d threads, %d reps\n", g.nx, g.ny, omp_get_max_threads(),
                reps);
#else
    std::printf("grid %dx%d nodes, OpenMP off, %d reps\n", g.nx, g.ny, reps);
#endif
    std::printf("%-18s %13s %13s %8s\n", "kernel", "parallel", "serial", "speedup");

    {
        volatile double sink = 0.0;
        double tp = seconds([&] { sink = integrate(C); }, reps);
        double a = integrate(C);
        double ts = seconds([&] { sink = serial::integrate(C); }, reps);
        double b = serial::integrate(C);
        (void)sink;
        report("integrate", tp, ts, a == b);
    }
    {
        VectorField gp, gs;
        double tp = seconds([&] { gp = grad(C); }, reps);
        double ts = seconds([&] { gs = serial::grad(C); }, reps);
        report("grad", tp, ts, same_bits(gp.x, gs.x) && same_bits(gp.y, gs.y));
    }
    {
        ScalarField dp, ds;
        double tp = seconds([&] { dp = div(vel); }, reps);
        double ts = seconds([&] { ds = serial::div(vel); }, reps);
        report("div", tp, ts, same_bits(dp.v, ds.v));
    }
    {
        volatile double sink = 0.0;
        double tp = seconds([&] { sink = free_energy(C, pp); }, reps);
        double a = free_energy(C, pp);
        double ts = seconds([&] { sink = serial::free_energy(C, pp); }, reps);
        double b = serial::free_energy(C, pp);
        (void)sink;
        report("free_energy", tp, ts, a == b);
    }
    {
        fem::CHLayout L(g);
        fem::SpMat Ap = fem::ch_pattern(L), As = fem::ch_pattern(L);
        Vec rp, rs;
        double tp =
            seconds([&] { fem::assemble_ch(L, C, vel, 1e-3, pp, Ap, rp); }, reps);
        double ts =
            seconds([&] { fem::serial::assemble_ch(L, C, vel, 1e-3, pp, As, rs); }, reps);
        bool same = same_bits(rp, rs) &&
                    std::memcmp(Ap.valuePtr(), As.valuePtr(),
                                sizeof(double) * Ap.nonZeros()) == 0;
        report("assemble_ch", tp, ts, same);
    }
    for (bool th : {true, false}) {
        fem::StokesLayout L(g, th);
        fem::SpMat Ap = fem::stokes_pattern(L), As = fem::stokes_pattern(L);
        Vec rp, rs;
        double tp =
            seconds([&] { fem::assemble_stokes(L, C, pp, 0.4, 0.1, Ap, rp); }, reps);
        double ts =
            seconds([&] { fem::serial::assemble_stokes(L, C, pp, 0.4, 0.1, As, rs); }, reps);
        bool same = same_bits(rp, rs) &&
                    std::memcmp(Ap.valuePtr(), As.valuePtr(),
                                sizeof(double) * Ap.nonZeros()) == 0;
        report(th ? "assemble_stokes q2" : "assemble_stokes q1", tp, ts, same);
    }
    return 0;
}
