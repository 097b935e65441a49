#pragma once

#include <string>
#include <vector>

#include "rodwave/forcing.hpp"

namespace rodwave {

// One fully deterministic sweep: no RNG, no threads, no environment input;
// identical configs produce byte-identical CSV output.
struct RunConfig {
    std::string model_text = "elastic";
    std::string forcing_text = "heaviside";
    double kappa = 1.0;
    std::vector<double> x_grid{0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<double> t_grid;
    bool want_displacement = true;
    bool want_stress = true;
    int n_max = 64;
    double tol = 1e-6;
    bool oracle_check = false;
    bool strict = false;          // promote an oracle-gate miss to exit 3
    bool allow_degenerate = false;
    std::string out_path = "rodwave.csv";
};

// Reads a flat key=value config file (one pair per line, '#' comments).
// Keys: model, forcing, kappa, x_grid, t_grid (space/comma separated lists),
// outputs (subset of displacement,stress), n_max, tol, oracle_check, strict,
// out.  Throws ConfigError pinpointing file:line.
RunConfig load_config_file(const std::string& path);

// Grid/range validation (ConfigError naming the offending field): grids
// nonempty, sorted, x within [0,1], t >= 0, kappa > 0, n_max >= 1,
// tol in [1e-10, 1e-2].
void validate(const RunConfig& cfg);

struct RunReport {
    int status = 0;            // 0 ok; 3 oracle gate exceeded under strict
    double oracle_max_dev = -1; // max |engine - oracle|; -1 when not checked
    int flagged_samples = 0;   // rows carrying any quality flag
    std::string results_path;
    std::string modes_path;
    std::string diag_path;
    std::string diagnostics;   // full text of the report
};

// Builds the pipeline (model audit, mode table, cut-side calibration),
// sweeps the grid, and writes three files next to out_path: the results CSV
// (`x,t,quantity,value,error_estimate,flags`, 17 significant digits), the
// mode table CSV, and a diagnostics text report.  Per-sample accuracy
// problems are embedded as flags, never aborts.  With oracle_check, engine
// values are cross-checked against the Laplace-inversion oracle on a grid
// subsample (t >= 0.1) against an absolute 1e-3 gate.
RunReport run(const RunConfig& cfg);

// Mode table for the configured (model, kappa, n_max), as CSV.
std::string dump_modes(const RunConfig& cfg);

} // namespace rodwave
