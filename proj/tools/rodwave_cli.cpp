// rodwave: transient response of a viscoelastic rod with a tip mass under
// boundary forcing.  Sweeps a space-time grid, writes per-sample CSV plus a
// mode table and a diagnostics report.
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rodwave/oracle.hpp"
#include "rodwave/runner.hpp"

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i)
        out.push_back(n == 1 ? hi : lo + (hi - lo) * i / (n - 1));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "rodwave: viscoelastic rod transient response "
        "(branch-cut integral + residue series, with a Laplace-inversion "
        "cross-check oracle)"};

    std::string config_path, model_text, forcing_text, out_path;
    double kappa = 0, tmax = 0, tol = 0;
    int nx = 0, nt = 0, n_max = 0;
    bool oracle_check = false, strict = false, unsafe_model = false;
    bool do_dump_modes = false, do_check_model = false;

    app.add_option("-c,--config", config_path, "flat key=value config file");
    app.add_option("--model", model_text,
                   "material, e.g. 'elastic' or 'zener alpha=0.5 a=0.2 b=0.6'");
    app.add_option("--forcing", forcing_text,
                   "tip force, e.g. 'heaviside' or 'power_step alpha=0.5'");
    app.add_option("--kappa", kappa, "rod/body mass ratio (> 0)");
    app.add_option("--tmax", tmax, "time horizon for the uniform t grid");
    app.add_option("--nx", nx, "uniform x grid size on [0,1] (>= 2)");
    app.add_option("--nt", nt, "uniform t panels on [0,tmax] (grid has nt+1 points)");
    app.add_option("--out", out_path, "results CSV path");
    app.add_option("--n-max", n_max, "number of modes in the residue series");
    app.add_option("--tol", tol, "target absolute error per sample");
    app.add_flag("--oracle-check", oracle_check,
                 "cross-check a grid subsample against the inversion oracle");
    app.add_flag("--strict", strict, "exit 3 when the oracle gate fails");
    app.add_flag("--unsafe-model", unsafe_model,
                 "accept degenerate materials (wave speed 0 or unbounded creep)");
    app.add_flag("--dump-modes", do_dump_modes,
                 "print the mode table CSV to stdout and exit");
    app.add_flag("--check-model", do_check_model,
                 "print the model assumption audit to stdout and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // bad usage is a config error
    }

    try {
        rodwave::RunConfig cfg;
        if (!config_path.empty())
            cfg = rodwave::load_config_file(config_path);

        if (app.count("--model")) cfg.model_text = model_text;
        if (app.count("--forcing")) cfg.forcing_text = forcing_text;
        if (app.count("--kappa")) cfg.kappa = kappa;
        if (app.count("--out")) cfg.out_path = out_path;
        if (app.count("--n-max")) cfg.n_max = n_max;
        if (app.count("--tol")) cfg.tol = tol;
        if (app.count("--oracle-check")) cfg.oracle_check = true;
        if (app.count("--strict")) cfg.strict = true;
        if (app.count("--unsafe-model")) cfg.allow_degenerate = true;
        if (app.count("--nx")) {
            if (nx < 2)
                throw rodwave::ConfigError("--nx must be at least 2");
            cfg.x_grid = linspace(0.0, 1.0, nx);
        }
        if (app.count("--tmax") || app.count("--nt")) {
            const double horizon = app.count("--tmax") ? tmax : 10.0;
            const int panels = app.count("--nt") ? nt : 20;
            if (!(horizon > 0))
                throw rodwave::ConfigError("--tmax must be positive");
            if (panels < 1)
                throw rodwave::ConfigError("--nt must be at least 1");
            cfg.t_grid = linspace(0.0, horizon, panels + 1);
        }
        if (cfg.t_grid.empty())
            cfg.t_grid = linspace(0.0, 10.0, 21);

        if (do_check_model) {
            const auto model =
                rodwave::parse_model(cfg.model_text, cfg.allow_degenerate);
            std::cout << model.describe() << "\n"
                      << rodwave::check_assumptions(model, 1e4, 64).render();
            return 0;
        }
        if (do_dump_modes) {
            std::cout << rodwave::dump_modes(cfg);
            return 0;
        }

        const rodwave::RunReport rep = rodwave::run(cfg);
        std::cerr << rep.diagnostics;
        std::cerr << "wrote " << rep.results_path << ", " << rep.modes_path
                  << ", " << rep.diag_path << "\n";
        return rep.status;
    } catch (const rodwave::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
