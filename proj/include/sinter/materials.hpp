#pragma once
// Material data: polymer viscosity and surface tension laws, the smoothed
// viscosity interpolation across the interface, and the characteristic
// scales that make the normalized parameter sets come out as documented.

#include <string>
#include <vector>

#include "sinter/grid.hpp"
#include "sinter/phasefield.hpp"

namespace sinter {

// Monotone bridge between ambient (beta*eta_p) and particle (eta_p) viscosity.
// C is clamped to [0,1] here and nowhere else.
double viscosity_interp(double C, double omega);
double eta_eff(double C, double eta_p, const PhaseParams& p);
ScalarField eta_eff_field(const ScalarField& C, double eta_p, const PhaseParams& p);

// eta_p(T) = eta_ref * exp(-coef * (T - T_ref)), T in kelvin
struct ViscosityLaw {
    double eta_ref = 1.0;
    double coef = 0.0;
    double T_ref = 0.0;
    double at(double T) const;
};

// gamma(T) = gamma_ref + slope * (T - T_ref); evaluating at a temperature
// where it is nonpositive is a hard error
struct TensionLaw {
    double gamma_ref = 1.0;
    double slope = 0.0;
    double T_ref = 0.0;
    double at(double T) const;
};

struct Material {
    std::string name;
    double T_ref = 0.0;    // kelvin
    double R0_phys = 0.0;  // particle radius in metres
    ViscosityLaw eta_law;  // Pa s
    TensionLaw gamma_law;  // N/m

    // characteristic scales (length m, viscosity Pa s, tension N/m)
    double L_c = 1.0;
    double eta_c = 1.0;
    double gamma_c = 1.0;
    double delta_star_ref = 3.0; // interface width on the reference mesh, units of L_c

    double t_c() const { return L_c * eta_c / gamma_c; }
    double R_star() const { return R0_phys / L_c; }
    double mu_star(double T) const { return eta_law.at(T) / eta_c; }
    double gamma_star(double T) const { return gamma_law.at(T) / gamma_c; }
};

// Known presets: "PA12@175C", "ABS@240C" and "ABS@T" (same record as
// ABS@240C; the name advertises the temperature laws). Throws on unknown
// names.
Material material_preset(const std::string& name);
std::vector<std::string> material_preset_names();

} // namespace sinter
