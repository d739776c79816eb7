#include "sinter/config.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace sinter {

using ojson = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw std::runtime_error("config: " + where + ": " + what);
}

void check_keys(const ojson& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(where, "expected an object");
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (item.key() == a) { ok = true; break; }
        if (!ok) {
            std::string list;
            for (const char* a : allowed) {
                if (!list.empty()) list += ", ";
                list += a;
            }
            fail(where, "unknown key \"" + item.key() + "\" (allowed: " + list + ")");
        }
    }
}

double num_or(const ojson& j, const char* key, double dflt, const std::string& where) {
    if (!j.contains(key)) return dflt;
    const auto& v = j.at(key);
    if (!v.is_number()) fail(where, std::string("\"") + key + "\" must be a number");
    return v.get<double>();
}

double num_req(const ojson& j, const char* key, const std::string& where) {
    if (!j.contains(key)) fail(where, std::string("missing required key \"") + key + "\"");
    return num_or(j, key, 0.0, where);
}

int int_or(const ojson& j, const char* key, int dflt, const std::string& where) {
    if (!j.contains(key)) return dflt;
    const auto& v = j.at(key);
    if (!v.is_number_integer()) fail(where, std::string("\"") + key + "\" must be an integer");
    return v.get<int>();
}

std::string str_or(const ojson& j, const char* key, const char* dflt, const std::string& where) {
    if (!j.contains(key)) return dflt;
    const auto& v = j.at(key);
    if (!v.is_string()) fail(where, std::string("\"") + key + "\" must be a string");
    return v.get<std::string>();
}

bool bool_or(const ojson& j, const char* key, bool dflt, const std::string& where) {
    if (!j.contains(key)) return dflt;
    const auto& v = j.at(key);
    if (!v.is_boolean()) fail(where, std::string("\"") + key + "\" must be a boolean");
    return v.get<bool>();
}

MaterialConfig parse_material(const ojson& j) {
    MaterialConfig m;
    if (j.is_string()) {
        m.preset = j.get<std::string>();
        bool known = false;
        for (const auto& name : material_preset_names())
            if (name == m.preset) known = true;
        if (!known) fail("material", "unknown preset \"" + m.preset + "\"");
        return m;
    }
    check_keys(j, "material", {"normalized", "physical"});
    if (j.contains("normalized") == j.contains("physical"))
        fail("material", "give a preset name, or exactly one of \"normalized\" / \"physical\"");
    if (j.contains("normalized")) {
        const auto& n = j.at("normalized");
        check_keys(n, "material.normalized", {"gamma", "mu_p", "R", "delta"});
        m.is_normalized = true;
        m.gamma_star = num_req(n, "gamma", "material.normalized");
        m.mu_star = num_req(n, "mu_p", "material.normalized");
        m.R_star = num_req(n, "R", "material.normalized");
        m.delta_star = num_req(n, "delta", "material.normalized");
        if (m.gamma_star <= 0 || m.mu_star <= 0 || m.R_star <= 0 || m.delta_star <= 0)
            fail("material.normalized", "gamma, mu_p, R, delta must all be positive");
    } else {
        const auto& p = j.at("physical");
        check_keys(p, "material.physical",
                   {"eta_ref_Pas", "eta_coef_perK", "gamma_ref_Npm", "gamma_slope_NpmK",
                    "T_ref_K", "R0_um", "L_c_um", "eta_c_Pas", "gamma_c_Npm", "delta_star"});
        m.is_physical = true;
        m.eta_ref = num_req(p, "eta_ref_Pas", "material.physical");
        m.eta_coef = num_or(p, "eta_coef_perK", 0.0, "material.physical");
        m.gamma_ref = num_req(p, "gamma_ref_Npm", "material.physical");
        m.gamma_slope = num_or(p, "gamma_slope_NpmK", 0.0, "material.physical");
        m.T_ref_K = num_req(p, "T_ref_K", "material.physical");
        m.R0_um = num_req(p, "R0_um", "material.physical");
        m.L_c_um = num_req(p, "L_c_um", "material.physical");
        m.eta_c = num_req(p, "eta_c_Pas", "material.physical");
        m.gamma_c = num_req(p, "gamma_c_Npm", "material.physical");
        m.delta_star_phys = num_req(p, "delta_star", "material.physical");
        if (m.eta_ref <= 0 || m.gamma_ref <= 0 || m.T_ref_K <= 0 || m.R0_um <= 0 ||
            m.L_c_um <= 0 || m.eta_c <= 0 || m.gamma_c <= 0 || m.delta_star_phys <= 0)
            fail("material.physical", "reference values and scales must be positive");
    }
    return m;
}

GeometryConfig parse_geometry(const ojson& j) {
    GeometryConfig g;
    g.type = str_or(j, "type", "two_equal", "geometry");
    const std::string where = "geometry(" + g.type + ")";
    if (g.type == "two_equal") {
        check_keys(j, where, {"type", "R", "initial_neck", "initial_neck_norm"});
        g.R = num_or(j, "R", 1.0, where);
        g.initial_neck = num_or(j, "initial_neck", 0.0, where);
        g.initial_neck_norm = str_or(j, "initial_neck_norm", "plain", where);
        if (g.initial_neck_norm != "plain" && g.initial_neck_norm != "sqrt2")
            fail(where, "initial_neck_norm must be \"plain\" or \"sqrt2\"");
    } else if (g.type == "pair") {
        check_keys(j, where, {"type", "R", "b"});
        g.R = num_or(j, "R", 1.0, where);
        g.b = num_or(j, "b", 1.0, where);
        if (g.b < 1.0) fail(where, "size ratio b must be >= 1 (b = R_large/R_small)");
    } else if (g.type == "chain") {
        check_keys(j, where, {"type", "radii"});
        if (!j.contains("radii") || !j.at("radii").is_array())
            fail(where, "\"radii\" must be an array of at least two positive numbers");
        for (const auto& r : j.at("radii")) {
            if (!r.is_number()) fail(where, "radii entries must be numbers");
            g.radii.push_back(r.get<double>());
        }
        if (g.radii.size() < 2) fail(where, "a chain needs at least two particles");
        for (double r : g.radii)
            if (r <= 0) fail(where, "radii must be positive");
    } else if (g.type == "ellipse_pair") {
        check_keys(j, where, {"type", "R", "lambda"});
        g.R = num_or(j, "R", 1.0, where);
        g.lambda = num_or(j, "lambda", 1.0, where);
        if (!(g.lambda > 0.0 && g.lambda <= 1.0))
            fail(where, "aspect ratio lambda = B/A must satisfy 0 < lambda <= 1");
    } else if (g.type == "disk") {
        check_keys(j, where, {"type", "R"});
        g.R = num_or(j, "R", 1.0, where);
    } else {
        fail("geometry", "unknown type \"" + g.type +
                             "\" (two_equal, pair, chain, ellipse_pair, disk)");
    }
    if (g.R <= 0) fail(where, "R must be positive");
    if (g.initial_neck < 0 || g.initial_neck > 0.9)
        fail(where, "initial_neck must lie in [0, 0.9]");
    return g;
}

GridConfig parse_grid(const ojson& j) {
    GridConfig g;
    check_keys(j, "grid", {"mesh", "cells_per_R"});
    if (j.contains("mesh") && j.contains("cells_per_R"))
        fail("grid", "give either \"mesh\" or \"cells_per_R\", not both");
    if (j.contains("mesh")) {
        g.mesh = str_or(j, "mesh", "", "grid");
        if (g.mesh == "M1")
            g.cells_per_R = 30;
        else if (g.mesh == "M2")
            g.cells_per_R = 60;
        else if (g.mesh == "M3")
            g.cells_per_R = 120;
        else
            fail("grid", "unknown mesh \"" + g.mesh + "\" (M1, M2, M3)");
    } else {
        g.cells_per_R = num_or(j, "cells_per_R", 30.0, "grid");
        if (g.cells_per_R < 8) fail("grid", "cells_per_R must be at least 8");
    }
    return g;
}

NumericsConfig parse_numerics(const ojson& j) {
    NumericsConfig n;
    const std::string w = "numerics";
    check_keys(j, w,
               {"t_star_end", "dt_init", "dt_max", "cfl", "mobility", "omega", "beta",
                "discretization", "stokes_tol", "ch_tol", "max_temp_step", "max_steps"});
    n.t_star_end = num_or(j, "t_star_end", n.t_star_end, w);
    n.dt_init_star = num_or(j, "dt_init", n.dt_init_star, w);
    n.dt_max_star = num_or(j, "dt_max", n.dt_max_star, w);
    n.cfl = num_or(j, "cfl", n.cfl, w);
    n.mobility = num_or(j, "mobility", n.mobility, w);
    n.omega = num_or(j, "omega", n.omega, w);
    n.beta = num_or(j, "beta", n.beta, w);
    n.discretization = str_or(j, "discretization", n.discretization.c_str(), w);
    n.stokes_tol = num_or(j, "stokes_tol", n.stokes_tol, w);
    n.ch_tol = num_or(j, "ch_tol", n.ch_tol, w);
    n.max_temp_step = num_or(j, "max_temp_step", n.max_temp_step, w);
    n.max_steps = int_or(j, "max_steps", n.max_steps, w);
    if (n.t_star_end <= 0) fail(w, "t_star_end must be positive");
    if (n.dt_init_star <= 0 || n.dt_max_star <= 0) fail(w, "time steps must be positive");
    if (!(n.cfl > 0 && n.cfl < 1)) fail(w, "cfl must lie in (0, 1)");
    if (n.mobility <= 0) fail(w, "mobility must be positive");
    if (!(n.omega > 3)) fail(w, "omega must exceed 3");
    if (!(n.beta > 0 && n.beta < 1)) fail(w, "beta must lie in (0, 1)");
    if (n.discretization != "taylor-hood" && n.discretization != "stabilized-q1q1")
        fail(w, "discretization must be \"taylor-hood\" or \"stabilized-q1q1\"");
    if (n.stokes_tol <= 0 || n.ch_tol <= 0) fail(w, "solver tolerances must be positive");
    if (n.max_temp_step <= 0) fail(w, "max_temp_step must be positive");
    if (n.max_steps < 1) fail(w, "max_steps must be at least 1");
    return n;
}

ScheduleConfig parse_schedule(const ojson& j) {
    ScheduleConfig s;
    s.type = str_or(j, "type", "isothermal", "schedule");
    if (s.type == "isothermal") {
        check_keys(j, "schedule(isothermal)", {"type", "T_C"});
        if (j.contains("T_C")) s.T_C = num_req(j, "T_C", "schedule");
    } else if (s.type == "ramp") {
        check_keys(j, "schedule(ramp)", {"type", "T0_C", "rate_C_per_min"});
        s.T0_C = num_req(j, "T0_C", "schedule(ramp)");
        s.rate_C_per_min = num_req(j, "rate_C_per_min", "schedule(ramp)");
    } else {
        fail("schedule", "unknown type \"" + s.type + "\" (isothermal, ramp)");
    }
    return s;
}

OutputConfig parse_outputs(const ojson& j) {
    OutputConfig o;
    const std::string w = "outputs";
    check_keys(j, w, {"dir", "series_every", "snapshot_t_star", "fields"});
    o.dir = str_or(j, "dir", o.dir.c_str(), w);
    o.series_every = int_or(j, "series_every", o.series_every, w);
    if (o.series_every < 1) fail(w, "series_every must be at least 1");
    if (j.contains("snapshot_t_star")) {
        if (!j.at("snapshot_t_star").is_array()) fail(w, "snapshot_t_star must be an array");
        for (const auto& v : j.at("snapshot_t_star")) {
            if (!v.is_number()) fail(w, "snapshot_t_star entries must be numbers");
            o.snapshot_t_star.push_back(v.get<double>());
            if (o.snapshot_t_star.back() < 0) fail(w, "snapshot times must be nonnegative");
        }
    }
    o.fields = bool_or(j, "fields", o.fields, w);
    return o;
}

Material material_from(const MaterialConfig& m) {
    if (!m.preset.empty()) return material_preset(m.preset);
    if (m.is_normalized) {
        Material mat;
        mat.name = "custom-normalized";
        mat.T_ref = 300.0;
        mat.L_c = 1.0;
        mat.eta_c = 1.0;
        mat.gamma_c = 1.0;
        mat.R0_phys = m.R_star;
        mat.eta_law = {m.mu_star, 0.0, mat.T_ref};
        mat.gamma_law = {m.gamma_star, 0.0, mat.T_ref};
        mat.delta_star_ref = m.delta_star;
        return mat;
    }
    Material mat;
    mat.name = "custom-physical";
    mat.T_ref = m.T_ref_K;
    mat.L_c = m.L_c_um * 1e-6;
    mat.eta_c = m.eta_c;
    mat.gamma_c = m.gamma_c;
    mat.R0_phys = m.R0_um * 1e-6;
    mat.eta_law = {m.eta_ref, m.eta_coef, m.T_ref_K};
    mat.gamma_law = {m.gamma_ref, m.gamma_slope, m.T_ref_K};
    mat.delta_star_ref = m.delta_star_phys;
    return mat;
}

ojson material_json(const MaterialConfig& m) {
    if (!m.preset.empty()) return ojson(m.preset);
    ojson j;
    if (m.is_normalized) {
        j["normalized"] = {{"gamma", m.gamma_star},
                           {"mu_p", m.mu_star},
                           {"R", m.R_star},
                           {"delta", m.delta_star}};
    } else {
        j["physical"] = {{"eta_ref_Pas", m.eta_ref},
                         {"eta_coef_perK", m.eta_coef},
                         {"gamma_ref_Npm", m.gamma_ref},
                         {"gamma_slope_NpmK", m.gamma_slope},
                         {"T_ref_K", m.T_ref_K},
                         {"R0_um", m.R0_um},
                         {"L_c_um", m.L_c_um},
                         {"eta_c_Pas", m.eta_c},
                         {"gamma_c_Npm", m.gamma_c},
                         {"delta_star", m.delta_star_phys}};
    }
    return j;
}

} // namespace

ConfigDocument parse_config(const std::string& json_text) {
    ojson j;
    try {
        j = ojson::parse(json_text);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("config: invalid JSON: ") + e.what());
    }
    check_keys(j, "top level",
               {"version", "material", "geometry", "grid", "numerics", "schedule", "outputs"});
    ConfigDocument doc;
    doc.version = int_or(j, "version", 1, "top level");
    if (doc.version != 1) fail("top level", "unsupported config version");
    if (j.contains("material")) doc.material = parse_material(j.at("material"));
    else doc.material.preset = "PA12@175C";
    if (j.contains("geometry")) doc.geometry = parse_geometry(j.at("geometry"));
    if (j.contains("grid")) doc.grid = parse_grid(j.at("grid"));
    if (j.contains("numerics")) doc.numerics = parse_numerics(j.at("numerics"));
    if (j.contains("schedule")) doc.schedule = parse_schedule(j.at("schedule"));
    if (j.contains("outputs")) doc.outputs = parse_outputs(j.at("outputs"));
    return doc;
}

ConfigDocument load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const ConfigDocument& doc) {
    ojson j;
    j["version"] = doc.version;
    j["material"] = material_json(doc.material);

    ojson g;
    g["type"] = doc.geometry.type;
    if (doc.geometry.type == "chain") {
        g["radii"] = doc.geometry.radii;
    } else {
        g["R"] = doc.geometry.R;
        if (doc.geometry.type == "two_equal") {
            g["initial_neck"] = doc.geometry.initial_neck;
            g["initial_neck_norm"] = doc.geometry.initial_neck_norm;
        }
        if (doc.geometry.type == "pair") g["b"] = doc.geometry.b;
        if (doc.geometry.type == "ellipse_pair") g["lambda"] = doc.geometry.lambda;
    }
    j["geometry"] = g;

    ojson gr;
    if (!doc.grid.mesh.empty()) gr["mesh"] = doc.grid.mesh;
    else gr["cells_per_R"] = doc.grid.cells_per_R;
    j["grid"] = gr;

    const NumericsConfig& n = doc.numerics;
    j["numerics"] = {{"t_star_end", n.t_star_end},
                     {"dt_init", n.dt_init_star},
                     {"dt_max", n.dt_max_star},
                     {"cfl", n.cfl},
                     {"mobility", n.mobility},
                     {"omega", n.omega},
                     {"beta", n.beta},
                     {"discretization", n.discretization},
                     {"stokes_tol", n.stokes_tol},
                     {"ch_tol", n.ch_tol},
                     {"max_temp_step", n.max_temp_step},
                     {"max_steps", n.max_steps}};

    ojson s;
    s["type"] = doc.schedule.type;
    if (doc.schedule.type == "isothermal") {
        if (doc.schedule.T_C) s["T_C"] = *doc.schedule.T_C;
    } else {
        s["T0_C"] = doc.schedule.T0_C;
        s["rate_C_per_min"] = doc.schedule.rate_C_per_min;
    }
    j["schedule"] = s;

    j["outputs"] = {{"dir", doc.outputs.dir},
                    {"series_every", doc.outputs.series_every},
                    {"snapshot_t_star", doc.outputs.snapshot_t_star},
                    {"fields", doc.outputs.fields}};
    return j.dump(2);
}

ResolvedRun resolve(const ConfigDocument& doc) {
    ResolvedRun rr;
    rr.doc = doc;
    rr.outputs = doc.outputs;

    RunParams& rp = rr.run;
    rp.material = material_from(doc.material);
    const double R_unit = rp.material.R_star();

    const GeometryConfig& g = doc.geometry;
    double R_ref = g.R * R_unit;
    if (g.type == "two_equal") {
        rp.scene = scene_two_equal(g.R * R_unit);
        if (g.initial_neck > 0)
            scene_set_initial_neck(rp.scene, g.initial_neck,
                                   g.initial_neck_norm == "sqrt2" ? NeckNorm::sqrt2
                                                                  : NeckNorm::plain);
    } else if (g.type == "pair") {
        rp.scene = scene_pair(g.R * R_unit, g.b);
    } else if (g.type == "chain") {
        std::vector<double> radii;
        for (double r : g.radii) radii.push_back(r * R_unit);
        rp.scene = scene_chain(radii);
        R_ref = *std::min_element(radii.begin(), radii.end());
        // track the first contact in the row, not the mid-particle plane
        rp.neck_plane_x = rp.scene.parts[0].cx + rp.scene.parts[0].A;
    } else if (g.type == "ellipse_pair") {
        rp.scene = scene_ellipse_pair(g.R * R_unit, g.lambda); // R is the equal-area radius
    } else if (g.type == "disk") {
        rp.scene = scene_disk(g.R * R_unit);
    }
    rp.R_ref = R_ref;
    rp.h = R_ref / doc.grid.cells_per_R;

    const NumericsConfig& n = doc.numerics;
    rp.t_star_end = n.t_star_end;
    rp.dt_init_star = n.dt_init_star;
    rp.dt_max_star = n.dt_max_star;
    rp.cfl = n.cfl;
    rp.mobility = n.mobility;
    rp.omega = n.omega;
    rp.beta = n.beta;
    rp.max_temp_step = n.max_temp_step;
    rp.max_steps = n.max_steps;
    rp.ch_tol = n.ch_tol;
    rp.stokes.tol = n.stokes_tol;
    rp.stokes.disc = n.discretization == "taylor-hood" ? StokesDisc::taylor_hood
                                                       : StokesDisc::stabilized_q1q1;

    if (doc.schedule.type == "isothermal") {
        rp.schedule.kind = Schedule::Kind::isothermal;
        rp.schedule.T0 = doc.schedule.T_C ? *doc.schedule.T_C + 273.15 : rp.material.T_ref;
        rr.doc.schedule.T_C = rp.schedule.T0 - 273.15;
    } else {
        rp.schedule.kind = Schedule::Kind::ramp;
        rp.schedule.T0 = doc.schedule.T0_C + 273.15;
        rp.schedule.rate_K_per_s = doc.schedule.rate_C_per_min / 60.0;
    }

    // freeze the resolution rule into the manifest copy
    rr.doc.grid.cells_per_R = doc.grid.cells_per_R;
    return rr;
}

} // namespace sinter
