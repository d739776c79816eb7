// Command line front end: single runs, parameter sweeps, the acceptance
// suite, and the analytic reference curve. One process, one writer; set
// SINTER_OUT_ROOT to prefix relative output directories.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"

#include "sinter/config.hpp"
#include "sinter/driver.hpp"
#include "sinter/geometry.hpp"
#include "sinter/oracle.hpp"
#include "sinter/output.hpp"
#include "sinter/phasefield.hpp"
#include "sinter/validate.hpp"

namespace fs = std::filesystem;
using namespace sinter;

namespace {

std::string fmt_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// relative output directories live under $SINTER_OUT_ROOT when it is set
std::string apply_out_root(const std::string& dir) {
    if (dir.empty() || fs::path(dir).is_absolute()) return dir;
    const char* root = std::getenv("SINTER_OUT_ROOT");
    if (!root || !*root) return dir;
    return (fs::path(root) / dir).string();
}

PhaseParams params_now(const RunParams& rp, double t_norm, double& eta_p) {
    double T = rp.schedule.at(t_norm * rp.material.t_c());
    eta_p = rp.material.mu_star(T);
    return params_from_physics(rp.material.gamma_star(T), 3.0 * rp.h, rp.mobility, rp.omega,
                               rp.beta);
}

// one configured run into its own directory; shared by `run` and `sweep`
int execute_run(const ConfigDocument& doc, bool resume, bool quiet) {
    ResolvedRun rr = resolve(doc);
    std::string out = apply_out_root(rr.outputs.dir);
    std::optional<Grid2D> grid;
    RunSummary sum;
    auto t_wall0 = std::chrono::steady_clock::now();

    try {
        fs::create_directories(out);
        {
            std::ofstream cfg(out + "/config.json");
            if (!cfg) throw std::runtime_error("cannot write " + out + "/config.json");
            cfg << serialize_config(rr.doc) << "\n";
        }

        Driver d(rr.run);
        grid = d.state().grid;
        if (resume) {
            std::string ck_path = out + "/checkpoint.json";
            if (fs::exists(ck_path)) {
                Checkpoint ck = load_checkpoint(ck_path);
                if (!(ck.grid == d.state().grid))
                    throw std::runtime_error("checkpoint grid does not match the configuration");
                d.restore(ck.C, ck.t, ck.step, ck.L0);
                if (!quiet)
                    std::fprintf(stderr, "resuming at step %d, t* = %.4f\n", ck.step,
                                 ck.t * d.t_star_rate());
            }
        }

        SeriesWriter series(out + "/series.csv", resume);
        DiagnosticsWriter diag(out + "/diagnostics.csv", resume);

        std::vector<double> snaps = rr.outputs.snapshot_t_star;
        std::sort(snaps.begin(), snaps.end());
        double ts_now = d.state().t * d.t_star_rate();
        while (!snaps.empty() && resume && snaps.front() < ts_now) snaps.erase(snaps.begin());

        auto drain_snapshots = [&](bool force_flow) {
            double ts = d.state().t * d.t_star_rate();
            while (!snaps.empty() && ts >= snaps.front() - 1e-9) {
                if (force_flow) d.measure(); // makes velocity and pressure current
                double eta = 0.0;
                PhaseParams pp = params_now(rr.run, d.state().t, eta);
                write_vtk(out + "/fields-t" + fmt_num(snaps.front()) + ".vtk", d.state(), pp,
                          eta);
                snaps.erase(snaps.begin());
            }
        };

        double mass0 = std::numeric_limits<double>::quiet_NaN();
        StepRecord last;
        drain_snapshots(true);
        while (!d.done()) {
            StepRecord r = d.advance();
            last = r;
            if (std::isnan(mass0)) mass0 = r.mass;
            if (r.step % std::max(1, rr.outputs.series_every) == 0) {
                series.append(r);
                diag.append(r);
            }
            if (!quiet && r.step % 25 == 0)
                std::fprintf(stderr, "step %6d  t* %8.4f  dt* %.2e  X* %.4f  T %.1f K\n", r.step,
                             r.t_star, r.dt * d.t_star_rate(), r.X_star_sqrt2, r.T);
            drain_snapshots(false);
        }
        last = d.measure();
        series.append(last);
        diag.append(last);
        if (std::isnan(mass0)) mass0 = last.mass;

        if (rr.outputs.fields) {
            double eta = 0.0;
            PhaseParams pp = params_now(rr.run, d.state().t, eta);
            write_vtk(out + "/fields-final.vtk", d.state(), pp, eta);
        }
        save_checkpoint(out + "/checkpoint.json", d.state());

        sum.steps = last.step;
        sum.t_star_end = last.t_star;
        sum.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_wall0).count();
        sum.mass_drift_rel = std::abs(last.mass - mass0) / std::abs(mass0);
        sum.final_neck_X = last.X_star_sqrt2;
        sum.final_strain = last.strain_x;
        sum.completed = true;
        write_manifest(out + "/manifest.json", rr.doc, rr.run, *grid, sum);
        if (!quiet)
            std::fprintf(stderr, "done: %d steps to t* = %.4f in %.1f s -> %s\n", sum.steps,
                         sum.t_star_end, sum.wall_seconds, out.c_str());
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "run failed: %s\n", e.what());
        sum.completed = false;
        sum.error = e.what();
        sum.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_wall0).count();
        try {
            if (!grid) grid = make_grid(rr.run.scene, rr.run.h);
            write_manifest(out + "/manifest.json", rr.doc, rr.run, *grid, sum);
        } catch (...) {
            // the manifest is best-effort once the run itself has failed
        }
        return 1;
    }
}

int cmd_run(const std::string& config_path, const std::string& out_override, bool resume,
            bool quiet) {
    ConfigDocument doc = load_config(config_path);
    if (!out_override.empty()) doc.outputs.dir = out_override;
    return execute_run(doc, resume, quiet);
}

// expand one parameter axis into per-cell run directories
int cmd_sweep(const std::string& config_path, const std::string& param,
              const std::vector<double>& values, const std::string& out_override, bool quiet) {
    if (values.empty()) throw std::runtime_error("sweep needs at least one value");
    ConfigDocument base = load_config(config_path);
    if (!out_override.empty()) base.outputs.dir = out_override;
    std::string root = base.outputs.dir;

    int failures = 0;
    std::vector<std::string> failed_cells;
    for (double v : values) {
        ConfigDocument doc = base;
        GeometryConfig& geo = doc.geometry;
        if (param == "b") {
            if (geo.type == "two_equal") geo.type = "pair";
            if (geo.type != "pair")
                throw std::runtime_error("sweep over b needs a pair geometry, got " + geo.type);
            geo.b = v;
        } else if (param == "lambda") {
            if (geo.type == "two_equal") geo.type = "ellipse_pair";
            if (geo.type != "ellipse_pair")
                throw std::runtime_error("sweep over lambda needs an ellipse_pair geometry, got " +
                                         geo.type);
            geo.lambda = v;
        } else if (param == "chain_n") {
            int n = static_cast<int>(std::lround(v));
            if (std::abs(v - n) > 1e-9 || n < 2)
                throw std::runtime_error("chain_n values must be integers >= 2");
            double R = geo.type == "chain" && !geo.radii.empty() ? geo.radii.front() : geo.R;
            geo.type = "chain";
            geo.radii.assign(static_cast<std::size_t>(n), R);
        } else {
            throw std::runtime_error("unknown sweep parameter '" + param +
                                     "' (expected b, lambda or chain_n)");
        }
        std::string cell = param + "-" + fmt_num(v);
        doc.outputs.dir = (fs::path(root) / cell).string();
        std::fprintf(stderr, "-- sweep cell %s --\n", cell.c_str());
        int rc = 1;
        try {
            rc = execute_run(doc, false, quiet);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "cell %s failed: %s\n", cell.c_str(), e.what());
        }
        if (rc != 0) {
            ++failures;
            failed_cells.push_back(cell);
        }
    }
    if (failures) {
        std::fprintf(stderr, "%d of %zu cells failed:", failures, values.size());
        for (const std::string& c : failed_cells) std::fprintf(stderr, " %s", c.c_str());
        std::fprintf(stderr, "\n");
        return 1;
    }
    std::fprintf(stderr, "all %zu cells completed\n", values.size());
    return 0;
}

int cmd_validate(std::vector<std::string> which, const std::string& artifacts, bool list,
                 bool quiet) {
    if (list) {
        std::vector<std::string> names = criterion_names();
        for (std::size_t k = 0; k < names.size(); ++k)
            std::printf("%2zu %s\n", k + 1, names[k].c_str());
        return 0;
    }
    ValidateOptions vo;
    vo.verbose = !quiet;
    vo.artifacts_dir = artifacts.empty() ? artifacts : apply_out_root(artifacts);
    AcceptanceSuite suite(vo);

    std::vector<CriterionResult> results;
    bool all = which.empty() ||
               std::find(which.begin(), which.end(), "all") != which.end();
    if (all) {
        results = suite.run_all();
    } else {
        for (const std::string& w : which) {
            bool numeric = !w.empty() && w.find_first_not_of("0123456789") == std::string::npos;
            results.push_back(numeric ? suite.run_one(std::stoi(w)) : suite.run_one(w));
        }
    }
    int passed = 0;
    for (const CriterionResult& r : results) {
        std::printf("%s\n", format_result(r).c_str());
        if (r.pass) ++passed;
    }
    std::printf("%d/%zu criteria passed\n", passed, results.size());
    return passed == static_cast<int>(results.size()) ? 0 : 1;
}

int cmd_oracle(const std::string& which, int points, const std::string& out_path) {
    if (which != "hopper")
        throw std::runtime_error("unknown reference curve '" + which + "' (expected hopper)");
    Curve c = hopper_curve(points);
    std::FILE* f = out_path.empty() ? stdout : std::fopen(out_path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open " + out_path);
    std::fprintf(f, "t_star,X_star\n");
    for (std::size_t k = 0; k < c.t.size(); ++k)
        std::fprintf(f, "%.12g,%.12g\n", c.t[k], c.x[k]);
    if (f != stdout) std::fclose(f);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"phase-field viscous sintering simulator"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads,
                   "worker thread count (1 = bytewise reproducible output)");

    auto* run = app.add_subcommand("run", "execute one configured run");
    std::string run_config, run_out;
    bool run_resume = false, run_quiet = false;
    run->add_option("--config", run_config, "JSON configuration file")->required();
    run->add_option("--out", run_out, "output directory (overrides the config)");
    run->add_flag("--resume", run_resume, "continue from the checkpoint in the output directory");
    run->add_flag("--quiet", run_quiet, "suppress progress output");

    auto* sweep = app.add_subcommand("sweep", "expand one parameter axis into cell runs");
    std::string sw_config, sw_param, sw_out;
    std::vector<double> sw_values;
    bool sw_quiet = false;
    sweep->add_option("--config", sw_config, "JSON configuration file")->required();
    sweep->add_option("--param", sw_param, "axis to sweep: b, lambda or chain_n")->required();
    sweep->add_option("--values", sw_values, "comma separated cell values")
        ->required()
        ->delimiter(',');
    sweep->add_option("--out", sw_out, "root directory for the cells");
    sweep->add_flag("--quiet", sw_quiet, "suppress progress output");

    auto* validate = app.add_subcommand("validate", "run acceptance criteria");
    std::vector<std::string> va_which;
    std::string va_artifacts;
    bool va_list = false, va_quiet = false;
    validate->add_option("criteria", va_which, "criterion names or ids (default: all)");
    validate->add_option("--artifacts", va_artifacts, "write per-run series CSVs here");
    validate->add_flag("--list", va_list, "list criterion names and exit");
    validate->add_flag("--quiet", va_quiet, "suppress progress output");

    auto* oracle = app.add_subcommand("oracle", "dump an analytic reference curve as CSV");
    std::string or_which = "hopper", or_out;
    int or_points = 400;
    oracle->add_option("curve", or_which, "curve name (hopper)");
    oracle->add_option("--points", or_points, "number of samples");
    oracle->add_option("--out", or_out, "output file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    try {
        if (*run) return cmd_run(run_config, run_out, run_resume, run_quiet);
        if (*sweep) return cmd_sweep(sw_config, sw_param, sw_values, sw_out, sw_quiet);
        if (*validate) return cmd_validate(va_which, va_artifacts, va_list, va_quiet);
        if (*oracle) return cmd_oracle(or_which, or_points, or_out);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
