#pragma once
// Run configuration: a strict JSON schema (unknown keys are errors) with
// defaults filled at parse time, and the lowering of a document into the
// normalized RunParams the driver consumes. A resolved document serialises
// with every field explicit, so manifests parse back to an equal document.

#include <optional>
#include <string>
#include <vector>

#include "sinter/driver.hpp"

namespace sinter {

struct MaterialConfig {
    std::string preset; // empty when one of the custom forms is used
    // normalized custom parameters
    bool is_normalized = false;
    double gamma_star = 0.0, mu_star = 0.0, R_star = 0.0, delta_star = 0.0;
    // physical custom laws
    bool is_physical = false;
    double eta_ref = 0.0, eta_coef = 0.0;    // Pa s, 1/K
    double gamma_ref = 0.0, gamma_slope = 0.0; // N/m, N/(m K)
    double T_ref_K = 0.0, R0_um = 0.0;
    double L_c_um = 0.0, eta_c = 0.0, gamma_c = 0.0;
    double delta_star_phys = 0.0;
};

struct GeometryConfig {
    std::string type = "two_equal"; // two_equal | pair | chain | ellipse_pair | disk
    double R = 1.0;                 // base radius, units of the material radius
    double b = 1.0;                 // pair size ratio (>= 1)
    double lambda = 1.0;            // ellipse aspect B/A in (0,1]
    std::vector<double> radii;      // chain radii, units of the material radius
    double initial_neck = 0.0;      // pre-formed neck fraction, 0 = tangent
    std::string initial_neck_norm = "plain"; // "plain" (x/R) or "sqrt2" (x/sqrt(2)R)
};

struct GridConfig {
    std::string mesh;          // "M1" | "M2" | "M3", overrides cells_per_R
    double cells_per_R = 30.0; // cells across the smallest particle radius
};

struct NumericsConfig {
    double t_star_end = 2.0;
    double dt_init_star = 1.0e-3;
    double dt_max_star = 2.0e-2;
    double cfl = 0.5;
    double mobility = 1.0e-3;
    double omega = 4.0;
    double beta = 1.0e-3;
    std::string discretization = "taylor-hood"; // or "stabilized-q1q1"
    double stokes_tol = 1.0e-9;
    double ch_tol = 1.0e-11;
    double max_temp_step = 0.5;
    int max_steps = 200000;
};

struct ScheduleConfig {
    std::string type = "isothermal"; // or "ramp"
    std::optional<double> T_C;       // isothermal temperature; material reference if absent
    double T0_C = 0.0;               // ramp start
    double rate_C_per_min = 0.0;     // ramp rate
};

struct OutputConfig {
    std::string dir = "out";
    int series_every = 1;
    std::vector<double> snapshot_t_star;
    bool fields = true; // write field snapshots alongside the series
};

struct ConfigDocument {
    int version = 1;
    MaterialConfig material;
    GeometryConfig geometry;
    GridConfig grid;
    NumericsConfig numerics;
    ScheduleConfig schedule;
    OutputConfig outputs;
};

ConfigDocument parse_config(const std::string& json_text);
ConfigDocument load_config(const std::string& path);
std::string serialize_config(const ConfigDocument& doc); // canonical key order

// Lowered, ready-to-run parameters plus the output plan.
struct ResolvedRun {
    RunParams run;
    OutputConfig outputs;
    ConfigDocument doc; // with defaults made explicit, for the manifest
};

ResolvedRun resolve(const ConfigDocument& doc);

} // namespace sinter
