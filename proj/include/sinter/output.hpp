#pragma once
// Run artifacts: the per-step CSV series, legacy-format VTK field snapshots,
// and a manifest that records the fully resolved configuration next to a
// summary of what the run produced.

#include <fstream>
#include <string>
#include <vector>

#include "sinter/config.hpp"
#include "sinter/driver.hpp"

namespace sinter {

class SeriesWriter {
public:
    // resume = true reopens an existing file and keeps appending to it
    explicit SeriesWriter(const std::string& path, bool resume = false);
    void append(const StepRecord& r);
    static const char* header();

private:
    std::ofstream out_;
};

// Solver health per step, kept out of the main series.
class DiagnosticsWriter {
public:
    explicit DiagnosticsWriter(const std::string& path, bool resume = false);
    void append(const StepRecord& r);

private:
    std::ofstream out_;
};

// Scalar C, pressure, effective viscosity, stress magnitude and the velocity
// vector on the regular node lattice, as ASCII STRUCTURED_POINTS.
void write_vtk(const std::string& path, const RunState& s, const PhaseParams& params,
               double eta_p);

struct RunSummary {
    int steps = 0;
    double t_star_end = 0.0;
    double wall_seconds = 0.0;
    double mass_drift_rel = 0.0;
    double final_neck_X = 0.0;
    double final_strain = 0.0;
    bool completed = true;
    std::string error; // when a run aborted mid-way
};

void write_manifest(const std::string& path, const ConfigDocument& resolved,
                    const RunParams& rp, const Grid2D& grid, const RunSummary& summary);

// The "config" block of a manifest, reparsed; equals the resolved document.
ConfigDocument config_from_manifest(const std::string& path);

// Reads back a series written by SeriesWriter, by column name. Columns that
// live in the diagnostics file come back zero.
std::vector<StepRecord> read_series(const std::string& path);

// Full phase field plus the scalar state needed to resume a run.
struct Checkpoint {
    Grid2D grid;
    ScalarField C;
    double t = 0.0;
    int step = 0;
    double L0 = 0.0;
};

void save_checkpoint(const std::string& path, const RunState& s);
Checkpoint load_checkpoint(const std::string& path);

} // namespace sinter
