#include "sinter/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

#include "sinter/analysis.hpp"
#include "sinter/materials.hpp"

namespace sinter {

static const char* kHeader =
    "t,t_star,neck_x,X_star_sqrt2,X_star_plain,strain_x,free_energy,area,T,"
    "stress_max,stress_mean,stress_std";

const char* SeriesWriter::header() { return kHeader; }

namespace {

bool file_has_content(const std::string& path) {
    std::ifstream in(path);
    return in && in.peek() != std::ifstream::traits_type::eof();
}

} // namespace

SeriesWriter::SeriesWriter(const std::string& path, bool resume) {
    bool keep = resume && file_has_content(path);
    out_.open(path, keep ? std::ios::app : std::ios::trunc);
    if (!out_) throw std::runtime_error("cannot open series file " + path);
    if (!keep) out_ << kHeader << "\n";
}

void SeriesWriter::append(const StepRecord& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                  r.t, r.t_star, r.neck_x, r.X_star_sqrt2, r.X_star_plain, r.strain_x,
                  r.free_energy, r.area, r.T, r.stress_max, r.stress_mean, r.stress_std);
    out_ << buf;
    out_.flush();
}

DiagnosticsWriter::DiagnosticsWriter(const std::string& path, bool resume) {
    bool keep = resume && file_has_content(path);
    out_.open(path, keep ? std::ios::app : std::ios::trunc);
    if (!out_) throw std::runtime_error("cannot open diagnostics file " + path);
    if (!keep) out_ << "step,t,t_star,dt,mass,u_max,div_residual,stokes_iters,ch_iters\n";
}

void DiagnosticsWriter::append(const StepRecord& r) {
    char buf[320];
    std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g,%.12g,%.17g,%.12g,%.12g,%d,%d\n", r.step,
                  r.t, r.t_star, r.dt, r.mass, r.u_max, r.div_residual, r.stokes_iters,
                  r.ch_iters);
    out_ << buf;
    out_.flush();
}

namespace {

void write_scalar(std::FILE* f, const char* name, const std::vector<double>& v) {
    std::fprintf(f, "SCALARS %s double 1\nLOOKUP_TABLE default\n", name);
    for (double x : v) std::fprintf(f, "%.9g\n", x);
}

} // namespace

void write_vtk(const std::string& path, const RunState& s, const PhaseParams& params,
               double eta_p) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open " + path);
    const Grid2D& g = s.grid;
    std::fprintf(f, "# vtk DataFile Version 3.0\n");
    std::fprintf(f, "sinter fields step=%d t=%.9g\n", s.step, s.t);
    std::fprintf(f, "ASCII\nDATASET STRUCTURED_POINTS\n");
    std::fprintf(f, "DIMENSIONS %d %d 1\n", g.nx, g.ny);
    std::fprintf(f, "ORIGIN %.9g %.9g 0\n", g.x0, g.y0);
    std::fprintf(f, "SPACING %.9g %.9g 1\n", g.h, g.h);
    std::fprintf(f, "POINT_DATA %d\n", g.nx * g.ny);

    write_scalar(f, "C", s.C.v);
    write_scalar(f, "pressure", s.pressure.v);
    write_scalar(f, "eta_eff", eta_eff_field(s.C, eta_p, params).v);
    write_scalar(f, "stress_fnorm", stress_fnorm(s.C, s.vel, s.pressure, params, eta_p).v);

    std::fprintf(f, "VECTORS velocity double\n");
    for (std::size_t n = 0; n < s.vel.x.size(); ++n)
        std::fprintf(f, "%.9g %.9g 0\n", s.vel.x[n], s.vel.y[n]);
    std::fclose(f);
}

void write_manifest(const std::string& path, const ConfigDocument& resolved,
                    const RunParams& rp, const Grid2D& grid, const RunSummary& summary) {
    using ojson = nlohmann::ordered_json;
    ojson m;
    m["config"] = ojson::parse(serialize_config(resolved));

    const double T0 = rp.schedule.T0 > 0 ? rp.schedule.T0 : rp.material.T_ref;
    ojson d;
    d["grid_nodes"] = {grid.nx, grid.ny};
    d["h"] = grid.h;
    d["box"] = {grid.x0, grid.x0 + grid.lx(), grid.y0, grid.y0 + grid.ly()};
    d["R_ref"] = rp.R_ref;
    d["delta"] = 3.0 * grid.h;
    d["T0_K"] = T0;
    d["gamma_norm"] = rp.material.gamma_star(T0);
    d["eta_norm"] = rp.material.mu_star(T0);
    d["time_scale_s"] = rp.material.t_c();
    m["derived"] = d;

    ojson s;
    s["steps"] = summary.steps;
    s["t_star_end"] = summary.t_star_end;
    s["wall_seconds"] = summary.wall_seconds;
    s["mass_drift_rel"] = summary.mass_drift_rel;
    s["final_neck_X"] = summary.final_neck_X;
    s["final_strain"] = summary.final_strain;
    s["completed"] = summary.completed;
    if (!summary.completed) s["error"] = summary.error;
    m["summary"] = s;

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << m.dump(2) << "\n";
}

ConfigDocument config_from_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifest " + path);
    nlohmann::ordered_json m = nlohmann::ordered_json::parse(in);
    if (!m.contains("config")) throw std::runtime_error("manifest has no config block: " + path);
    return parse_config(m.at("config").dump());
}

void save_checkpoint(const std::string& path, const RunState& s) {
    using ojson = nlohmann::ordered_json;
    ojson j;
    j["grid"] = {{"nx", s.grid.nx},
                 {"ny", s.grid.ny},
                 {"h", s.grid.h},
                 {"x0", s.grid.x0},
                 {"y0", s.grid.y0}};
    j["t"] = s.t;
    j["step"] = s.step;
    j["L0"] = s.L0;
    j["C"] = s.C.v;
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open checkpoint " + path);
    out << j.dump() << "\n";
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open checkpoint " + path);
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(in);
    const auto& g = j.at("grid");
    Checkpoint ck{Grid2D(g.at("nx").get<int>(), g.at("ny").get<int>(), g.at("h").get<double>(),
                         g.at("x0").get<double>(), g.at("y0").get<double>()),
                  ScalarField(), j.at("t").get<double>(), j.at("step").get<int>(),
                  j.at("L0").get<double>()};
    ck.C = ScalarField(ck.grid);
    std::vector<double> vals = j.at("C").get<std::vector<double>>();
    if (vals.size() != ck.C.v.size())
        throw std::runtime_error("checkpoint field size does not match its grid: " + path);
    ck.C.v = std::move(vals);
    return ck;
}

std::vector<StepRecord> read_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open series file " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty series file " + path);

    std::unordered_map<std::string, int> col;
    {
        std::istringstream hs(line);
        std::string name;
        int idx = 0;
        while (std::getline(hs, name, ',')) col[name] = idx++;
    }
    auto idx_of = [&](const char* name) {
        auto it = col.find(name);
        return it == col.end() ? -1 : it->second;
    };
    const int i_step = idx_of("step"), i_t = idx_of("t"), i_ts = idx_of("t_star"),
              i_dt = idx_of("dt"), i_T = idx_of("T"), i_neck = idx_of("neck_x"),
              i_xs = idx_of("X_star_sqrt2"), i_xp = idx_of("X_star_plain"),
              i_strain = idx_of("strain_x"), i_fe = idx_of("free_energy"),
              i_area = idx_of("area"), i_mass = idx_of("mass"), i_smax = idx_of("stress_max"),
              i_smean = idx_of("stress_mean"), i_sstd = idx_of("stress_std"),
              i_umax = idx_of("u_max"), i_div = idx_of("div_residual"),
              i_si = idx_of("stokes_iters"), i_ci = idx_of("ch_iters");

    std::vector<StepRecord> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> vals;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) vals.push_back(std::stod(cell));
        auto at = [&](int i) { return i >= 0 && i < (int)vals.size() ? vals[i] : 0.0; };
        StepRecord r;
        r.step = (int)at(i_step);
        r.t = at(i_t);
        r.t_star = at(i_ts);
        r.dt = at(i_dt);
        r.T = at(i_T);
        r.neck_x = at(i_neck);
        r.X_star_sqrt2 = at(i_xs);
        r.X_star_plain = at(i_xp);
        r.strain_x = at(i_strain);
        r.free_energy = at(i_fe);
        r.area = at(i_area);
        r.mass = at(i_mass);
        r.stress_max = at(i_smax);
        r.stress_mean = at(i_smean);
        r.stress_std = at(i_sstd);
        r.u_max = at(i_umax);
        r.div_residual = at(i_div);
        r.stokes_iters = (int)at(i_si);
        r.ch_iters = (int)at(i_ci);
        rows.push_back(r);
    }
    return rows;
}

} // namespace sinter
