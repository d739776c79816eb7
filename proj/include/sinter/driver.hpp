#pragma once
// Time integration: alternate quasi-static flow solves with implicit
// transport steps. The step size follows min(dt_max, CFL h / max|u|), grows
// at most 25% per step, and under a temperature ramp is additionally capped
// so the temperature changes at most half a kelvin per step.
//
// Everything here works in normalized units (the material's characteristic
// length, viscosity and tension scales). Normalized time t relates to the
// reported t* through the tension/viscosity ratio at the starting
// temperature: t* = t * gamma*(T0) / (R_ref * mu*(T0)).

#include <functional>
#include <vector>

#include "sinter/analysis.hpp"
#include "sinter/flow.hpp"
#include "sinter/geometry.hpp"
#include "sinter/grid.hpp"
#include "sinter/materials.hpp"
#include "sinter/transport.hpp"

namespace sinter {

struct Schedule {
    enum class Kind { isothermal, ramp };
    Kind kind = Kind::isothermal;
    double T0 = 0.0;         // kelvin at t = 0
    double rate_K_per_s = 0.0; // physical heating rate (ramp only)

    double at(double t_phys) const {
        return kind == Kind::isothermal ? T0 : T0 + rate_K_per_s * t_phys;
    }
};

struct RunParams {
    Scene scene;
    double h = 0.0;          // cell size; interface width is pinned to 3h
    Material material;
    Schedule schedule;       // T0 defaults to the material reference temperature
    double R_ref = 0.0;      // radius used in t* and X* (smallest particle)

    double t_star_end = 2.0;
    double dt_init_star = 1.0e-3; // first step, in t* units
    double dt_max_star = 2.0e-2;  // step ceiling, in t* units
    double cfl = 0.5;
    double max_temp_step = 0.5;   // kelvin per step

    double mobility = 1.0e-3;
    double omega = 4.0;
    double beta = 1.0e-3;

    StokesOptions stokes;
    double ch_tol = 1.0e-11;
    int max_steps = 200000;

    double neck_plane_x = 0.0;
};

struct StepRecord {
    int step = 0;
    double t = 0.0, t_star = 0.0, dt = 0.0;
    double T = 0.0; // kelvin
    double neck_x = 0.0, X_star_sqrt2 = 0.0, X_star_plain = 0.0;
    double strain_x = 0.0;
    double free_energy = 0.0, area = 0.0, mass = 0.0;
    double stress_max = 0.0, stress_mean = 0.0, stress_std = 0.0;
    double stress_max_x = 0.0, stress_max_y = 0.0;
    double u_max = 0.0, div_residual = 0.0;
    int stokes_iters = 0, ch_iters = 0;
};

struct RunState {
    Grid2D grid;
    ScalarField C;
    ScalarField mu;
    VectorField vel;
    ScalarField pressure;
    double t = 0.0;
    int step = 0;
    double L0 = 0.0; // initial x extent, strain reference
};

class Driver {
  public:
    explicit Driver(const RunParams& rp);

    // Resume from a checkpointed state. The field must live on the grid this
    // driver derived from its scene; L0 keeps the original strain reference.
    void restore(const ScalarField& C, double t, int step, double L0);

    // Measure the current state (solving the flow if needed), then take one
    // transport step. Returns the record of the pre-step state.
    StepRecord advance();

    // Record of the current state without advancing (used for the final row).
    StepRecord measure();

    bool done() const;
    const RunState& state() const { return state_; }
    const RunParams& params() const { return rp_; }
    double t_end() const { return t_end_; }

    // t* per unit normalized time, fixed by the starting temperature
    double t_star_rate() const { return t_star_rate_; }

    using Callback = std::function<void(const RunState&, const StepRecord&)>;
    std::vector<StepRecord> run(const Callback& per_step = {});

  private:
    PhaseParams params_at(double T) const;
    void solve_flow_if_needed();

    RunParams rp_;
    RunState state_;
    StokesSolver stokes_;
    CHStepper ch_;
    double t_end_ = 0.0;
    double t_star_rate_ = 0.0;
    double delta_ = 0.0; // interface width, 3h
    double dt_prev_ = 0.0;
    double T_now_ = 0.0;
    bool flow_fresh_ = false;
    SolveStats last_flow_stats_;
    double last_div_residual_ = 0.0;
};

} // namespace sinter
