#include "sinter/driver.hpp"

#include <cmath>
#include <stdexcept>

#include "sinter/ops.hpp"
#include "sinter/phasefield.hpp"

namespace sinter {

namespace {

Grid2D grid_for(const RunParams& rp) {
    if (!(rp.h > 0.0)) throw std::invalid_argument("RunParams: cell size must be positive");
    return make_grid(rp.scene, rp.h);
}

} // namespace

Driver::Driver(const RunParams& rp)
    : rp_(rp),
      state_{grid_for(rp), ScalarField(), ScalarField(), VectorField(), ScalarField(), 0.0, 0},
      stokes_(state_.grid, rp.stokes),
      ch_(state_.grid, rp.ch_tol) {
    if (!(rp_.R_ref > 0.0)) throw std::invalid_argument("RunParams: R_ref must be positive");
    if (!(rp_.cfl > 0.0 && rp_.cfl < 1.0))
        throw std::invalid_argument("RunParams: CFL number must lie in (0, 1)");
    if (rp_.schedule.T0 == 0.0) rp_.schedule.T0 = rp_.material.T_ref;

    delta_ = 3.0 * rp_.h;
    state_.C = initial_field(rp_.scene, state_.grid, delta_, rp_.stokes.sym_x0,
                             rp_.stokes.sym_y0);
    state_.mu = ScalarField(state_.grid);
    state_.vel = VectorField(state_.grid);
    state_.pressure = ScalarField(state_.grid);
    state_.L0 = axial_extent(state_.C);
    T_now_ = rp_.schedule.T0;

    const double gamma0 = rp_.material.gamma_star(T_now_);
    const double mu0 = rp_.material.mu_star(T_now_);
    t_star_rate_ = gamma0 / (rp_.R_ref * mu0);
    t_end_ = rp_.t_star_end / t_star_rate_;
}

void Driver::restore(const ScalarField& C, double t, int step, double L0) {
    check_same_grid(C.grid, state_.grid, "Driver::restore");
    state_.C = C;
    state_.t = t;
    state_.step = step;
    state_.L0 = L0;
    dt_prev_ = 0.0;
    flow_fresh_ = false;
}

PhaseParams Driver::params_at(double T) const {
    // tension enters through the parameter map with the width pinned to the
    // mesh; mobility and the viscosity interpolation shape stay fixed
    return params_from_physics(rp_.material.gamma_star(T), delta_, rp_.mobility, rp_.omega,
                               rp_.beta);
}

void Driver::solve_flow_if_needed() {
    if (flow_fresh_) return;
    T_now_ = rp_.schedule.at(state_.t * rp_.material.t_c());
    PhaseParams p = params_at(T_now_);
    StokesSolution sol = stokes_.solve(state_.C, p, rp_.material.mu_star(T_now_));
    state_.vel = std::move(sol.velocity);
    state_.pressure = std::move(sol.pressure);
    last_flow_stats_ = sol.stats;
    last_div_residual_ = sol.div_residual;
    flow_fresh_ = true;
}

StepRecord Driver::measure() {
    solve_flow_if_needed();
    StepRecord r;
    r.step = state_.step;
    r.t = state_.t;
    r.t_star = state_.t * t_star_rate_;
    r.T = T_now_;
    r.neck_x = neck_halfwidth(state_.C, rp_.neck_plane_x, 0.5, rp_.stokes.sym_y0);
    r.X_star_sqrt2 = r.neck_x / (std::sqrt(2.0) * rp_.R_ref);
    r.X_star_plain = r.neck_x / rp_.R_ref;
    r.strain_x = axial_strain(state_.C, state_.L0);
    PhaseParams p = params_at(T_now_);
    r.free_energy = free_energy(state_.C, p);
    r.area = phase_area(state_.C);
    r.mass = integrate(state_.C);
    ScalarField s = stress_fnorm(state_.C, state_.vel, state_.pressure, p,
                                 rp_.material.mu_star(T_now_));
    StressStats st = stress_stats(s, state_.C);
    r.stress_max = st.max;
    r.stress_mean = st.mean;
    r.stress_std = st.stddev;
    r.stress_max_x = st.max_x;
    r.stress_max_y = st.max_y;
    r.u_max = max_norm(state_.vel);
    r.div_residual = last_div_residual_;
    r.stokes_iters = last_flow_stats_.iterations;
    return r;
}

bool Driver::done() const { return state_.t >= t_end_ || state_.step >= rp_.max_steps; }

StepRecord Driver::advance() {
    StepRecord r = measure();

    double dt = rp_.dt_init_star / t_star_rate_;
    if (dt_prev_ > 0.0) {
        dt = 1.25 * dt_prev_;
        if (r.u_max > 0.0) dt = std::min(dt, rp_.cfl * state_.grid.h / r.u_max);
    }
    dt = std::min(dt, rp_.dt_max_star / t_star_rate_);
    if (rp_.schedule.kind == Schedule::Kind::ramp && rp_.schedule.rate_K_per_s != 0.0) {
        double rate_norm = std::abs(rp_.schedule.rate_K_per_s) * rp_.material.t_c();
        dt = std::min(dt, rp_.max_temp_step / rate_norm);
    }
    if (dt * t_star_rate_ < 1e-12)
        throw std::runtime_error("time step underflow: dt* = " +
                                 std::to_string(dt * t_star_rate_) + " at step " +
                                 std::to_string(state_.step) +
                                 " (velocity blow-up or degenerate parameters)");
    dt = std::min(dt, t_end_ - state_.t);
    if (!(dt > 0.0)) throw std::runtime_error("advance() called past the end time");

    PhaseParams p = params_at(T_now_);
    CHStepResult res = ch_.step(state_.C, state_.vel, dt, p);
    state_.C = std::move(res.C);
    state_.mu = std::move(res.mu);
    state_.t += dt;
    state_.step += 1;
    dt_prev_ = dt;
    flow_fresh_ = false;

    r.dt = dt;
    r.ch_iters = res.stats.iterations;
    return r;
}

std::vector<StepRecord> Driver::run(const Callback& per_step) {
    std::vector<StepRecord> series;
    series.reserve(1024);
    while (!done()) {
        StepRecord r = advance();
        series.push_back(r);
        if (per_step) per_step(state_, r);
    }
    StepRecord last = measure();
    series.push_back(last);
    if (per_step) per_step(state_, last);
    return series;
}

} // namespace sinter
