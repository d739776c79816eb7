#include "sinter/materials.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sinter {

double viscosity_interp(double C, double omega) {
    double c = std::clamp(C, 0.0, 1.0);
    double d = 1.0 - c;
    return c * c * (1.0 + 2.0 * d + omega * d * d);
}

double eta_eff(double C, double eta_p, const PhaseParams& p) {
    return (p.beta + (1.0 - p.beta) * viscosity_interp(C, p.omega)) * eta_p;
}

ScalarField eta_eff_field(const ScalarField& C, double eta_p, const PhaseParams& p) {
    ScalarField out(C.grid);
#pragma omp parallel for schedule(static)
    for (std::size_t k = 0; k < C.v.size(); ++k)
        out.v[k] = eta_eff(C.v[k], eta_p, p);
    return out;
}

double ViscosityLaw::at(double T) const { return eta_ref * std::exp(-coef * (T - T_ref)); }

double TensionLaw::at(double T) const {
    double g = gamma_ref + slope * (T - T_ref);
    if (!(g > 0.0))
        throw std::runtime_error("surface tension law evaluated at " + std::to_string(T) +
                                 " K gives a nonpositive value; temperature out of range");
    return g;
}

Material material_preset(const std::string& name) {
    if (name == "PA12@175C") {
        // 400 Pa s, 0.03 N/m, 30 um particles; no temperature dependence on record.
        Material m;
        m.name = name;
        m.T_ref = 448.15;
        m.R0_phys = 30.0e-6;
        m.eta_law = {400.0, 0.0, m.T_ref};
        m.gamma_law = {0.03, 0.0, m.T_ref};
        m.L_c = 1.0e-6;    // R* = 30
        m.eta_c = 1000.0;  // mu* = 0.4
        m.gamma_c = 1.0e-3; // gamma* = 30, t_c = 1 s
        m.delta_star_ref = 3.0;
        return m;
    }
    if (name == "ABS@240C" || name == "ABS@T") {
        // 5100 Pa s and 0.029 N/m at 513 K, 235 um particles, with measured
        // exponential viscosity and linear tension temperature laws. ABS@T is
        // the same record under the name that emphasizes the laws.
        Material m;
        m.name = name;
        m.T_ref = 513.0;
        m.R0_phys = 235.0e-6;
        m.eta_law = {5100.0, 0.056, 513.0};
        m.gamma_law = {0.029, -0.000345, 513.0};
        m.L_c = 10.0e-6;          // R* = 23.5
        m.eta_c = 5100.0 / 34.94; // mu* = 34.94
        m.gamma_c = 0.029 / 20.0; // gamma* = 20
        m.delta_star_ref = 2.0;
        return m;
    }
    throw std::invalid_argument("unknown material preset '" + name + "'");
}

std::vector<std::string> material_preset_names() { return {"PA12@175C", "ABS@240C", "ABS@T"}; }

} // namespace sinter
