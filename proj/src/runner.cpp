#include "rodwave/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include "rodwave/oracle.hpp"

namespace rodwave {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> parse_list(const std::string& text, const std::string& where) {
    std::string s = text;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    std::vector<double> out;
    double v;
    while (in >> v)
        out.push_back(v);
    if (!in.eof())
        throw ConfigError(where + ": expected a list of numbers, got '" + text + "'");
    return out;
}

bool parse_bool(const std::string& v, const std::string& where) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError(where + ": expected true/false, got '" + v + "'");
}

double parse_num(const std::string& v, const std::string& where) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size())
            throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError(where + ": expected a number, got '" + v + "'");
    }
}

} // namespace

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open '" + path + "'");
    RunConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        const auto eq = line.find('=');
        const std::string where = path + ":" + std::to_string(line_no);
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected key = value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError(where + ": empty key or value");

        if (key == "model") cfg.model_text = val;
        else if (key == "forcing") cfg.forcing_text = val;
        else if (key == "kappa") cfg.kappa = parse_num(val, where + " (kappa)");
        else if (key == "x_grid") cfg.x_grid = parse_list(val, where + " (x_grid)");
        else if (key == "t_grid") cfg.t_grid = parse_list(val, where + " (t_grid)");
        else if (key == "n_max") cfg.n_max = static_cast<int>(parse_num(val, where + " (n_max)"));
        else if (key == "tol") cfg.tol = parse_num(val, where + " (tol)");
        else if (key == "oracle_check") cfg.oracle_check = parse_bool(val, where + " (oracle_check)");
        else if (key == "strict") cfg.strict = parse_bool(val, where + " (strict)");
        else if (key == "out") cfg.out_path = val;
        else if (key == "outputs") {
            cfg.want_displacement = val.find("displacement") != std::string::npos;
            cfg.want_stress = val.find("stress") != std::string::npos;
            if (!cfg.want_displacement && !cfg.want_stress)
                throw ConfigError(where + ": outputs must name displacement and/or stress");
        } else {
            throw ConfigError(where + ": unknown key '" + key + "'");
        }
    }
    return cfg;
}

void validate(const RunConfig& cfg) {
    if (!(cfg.kappa > 0.0))
        throw ConfigError("kappa must be positive");
    if (cfg.x_grid.empty())
        throw ConfigError("x_grid is empty");
    if (cfg.t_grid.empty())
        throw ConfigError("t_grid is empty");
    if (!std::is_sorted(cfg.x_grid.begin(), cfg.x_grid.end()))
        throw ConfigError("x_grid must be sorted ascending");
    if (!std::is_sorted(cfg.t_grid.begin(), cfg.t_grid.end()))
        throw ConfigError("t_grid must be sorted ascending");
    for (double x : cfg.x_grid)
        if (!(x >= 0.0 && x <= 1.0))
            throw ConfigError("x_grid entries must lie in [0,1]");
    for (double t : cfg.t_grid)
        if (!(t >= 0.0))
            throw ConfigError("t_grid entries must be nonnegative");
    if (cfg.n_max < 1)
        throw ConfigError("n_max must be at least 1");
    if (!(cfg.tol >= 1e-10 && cfg.tol <= 1e-2))
        throw ConfigError("tol must lie in [1e-10, 1e-2]");
    if (!cfg.want_displacement && !cfg.want_stress)
        throw ConfigError("no outputs requested");
}

namespace {

struct Record {
    double x, t;
    const char* quantity;
    KernelValue kv;
};

// Laplace transform of the forcing, for assembling oracle references of the
// composed fields.  The tabulated signal has no closed transform; the
// caller skips the check for it.
ComplexS forcing_transform(const ForcingSignal& f, ComplexS s) {
    switch (f.kind()) {
    case ForcingKind::Heaviside: return 1.0 / s;
    case ForcingKind::Impulse: return ComplexS(1.0, 0.0);
    case ForcingKind::Sinusoid:
        return f.amplitude() * f.omega() / (s * s + f.omega() * f.omega());
    case ForcingKind::PowerStep: return std::pow(s, -f.alpha());
    case ForcingKind::Tabulated: break;
    }
    throw DomainError("forcing transform unavailable");
}

// stride a grid down to at most k entries, keeping the extremes
std::vector<double> subsample(const std::vector<double>& grid, std::size_t k) {
    if (grid.size() <= k)
        return grid;
    std::vector<double> out;
    for (std::size_t i = 0; i < k; ++i)
        out.push_back(grid[i * (grid.size() - 1) / (k - 1)]);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

RunReport run(const RunConfig& cfg) {
    validate(cfg);
    const ConstitutiveModel model = parse_model(cfg.model_text, cfg.allow_degenerate);
    const ForcingSignal forcing = parse_forcing(cfg.forcing_text);

    RunReport rep;
    std::string diag;
    diag += "model: " + model.describe() + "\n";
    diag += "forcing: " + forcing.describe() + "\n";
    diag += "kappa: " + fmt17(cfg.kappa) + "  n_max: " + std::to_string(cfg.n_max) +
            "  tol: " + fmt17(cfg.tol) + "\n\n";

    diag += check_assumptions(model, 1e4, 64).render();
    diag += "\n";

    const auto modes = std::make_shared<const ModeSet>(
        build_mode_set(model, cfg.kappa, cfg.n_max));
    {
        char line[160];
        std::snprintf(line, sizeof line,
                      "modes: %d built, %zu unresolved; tail K=%.6g a=%.6g; "
                      "s_0 = %.6g%+.6gi\n",
                      modes->n_max(), modes->unresolved.size(), modes->tail.K,
                      modes->tail.a, modes->modes.front().s.real(),
                      modes->modes.front().s.imag());
        diag += line;
    }

    KernelSpec spec_P = make_kernel_spec(KernelKind::DisplacementP, model,
                                         cfg.kappa, modes, cfg.tol);
    KernelSpec spec_S = make_kernel_spec(KernelKind::StressSigmaH, model,
                                         cfg.kappa, modes, cfg.tol);
    spec_P.cut_side = calibrate_cut_side(KernelKind::DisplacementP, model,
                                         cfg.kappa, modes, &diag);
    spec_S.cut_side = calibrate_cut_side(KernelKind::StressSigmaH, model,
                                         cfg.kappa, modes, &diag);

    // grid sweep, x outer / t inner, displacement before stress: the order
    // is part of the CSV schema stability contract
    const bool sweep_stress =
        cfg.want_stress && forcing.kind() != ForcingKind::Impulse;
    if (cfg.want_stress && !sweep_stress)
        diag += "stress sweep: skipped (impulsive forcing has distributional "
                "stress)\n";
    std::vector<Record> records;
    records.reserve(cfg.x_grid.size() * cfg.t_grid.size() * 2);
    for (double x : cfg.x_grid) {
        for (double t : cfg.t_grid) {
            if (cfg.want_displacement)
                records.push_back({x, t, "u", compose_u(spec_P, forcing, x, t)});
            if (sweep_stress)
                records.push_back({x, t, "sigma", compose_sigma(spec_S, forcing, x, t)});
        }
    }
    for (const Record& r : records)
        if (r.kv.flags != 0)
            ++rep.flagged_samples;

    // oracle cross-check on a subsample (closed-form forcing transforms only)
    if (cfg.oracle_check) {
        if (forcing.kind() == ForcingKind::Tabulated) {
            diag += "oracle check: skipped (tabulated forcing has no closed "
                    "transform)\n";
        } else {
            std::vector<double> ts;
            for (double t : cfg.t_grid)
                if (t >= 0.1) ts.push_back(t);
            ts = subsample(ts, 3);
            const std::vector<double> xs = subsample(cfg.x_grid, 3);
            if (ts.empty()) {
                diag += "oracle check: skipped (no grid points with t >= 0.1)\n";
            } else {
                OracleOptions opt;
                opt.modes = modes.get();
                opt.tol = 1e-5;
                opt.t_max = ts.back();
                double max_dev = 0;
                int checked = 0, refused = 0;
                for (double x : xs) {
                    for (double t : ts) {
                        for (const Record& r : records) {
                            if (r.x != x || r.t != t) continue;
                            const bool stress = r.quantity[0] == 's';
                            if (stress && forcing.kind() == ForcingKind::Impulse)
                                continue; // not representable; not swept either
                            const LaplaceTransform tr = [&](ComplexS s) {
                                const ComplexS fhat = forcing_transform(forcing, s);
                                return stress
                                           ? s * fhat * sigma_H_hat(model, cfg.kappa, x, s)
                                           : fhat * P_hat(model, cfg.kappa, x, s);
                            };
                            try {
                                const BromwichConfig bc = make_bromwich_config(
                                    modes.get(), std::max(t, opt.t_max),
                                    opt.n_terms, opt.euler_m);
                                const InversionResult want = invert(tr, bc, t, opt.tol);
                                max_dev = std::max(max_dev,
                                                   std::abs(r.kv.value - want.value));
                                ++checked;
                            } catch (const AccuracyError&) {
                                ++refused; // oracle could not certify this point
                            }
                        }
                    }
                }
                rep.oracle_max_dev = max_dev;
                char line[160];
                std::snprintf(line, sizeof line,
                              "oracle check: max |engine - oracle| = %.3e over %d "
                              "samples (%d refused), gate 1e-3\n",
                              max_dev, checked, refused);
                diag += line;
                if (max_dev > 1e-3) {
                    diag += cfg.strict ? "oracle gate FAILED (strict: exit 3)\n"
                                       : "oracle gate FAILED (advisory)\n";
                    if (cfg.strict)
                        rep.status = 3;
                }
            }
        }
    }

    // results CSV
    rep.results_path = cfg.out_path;
    rep.modes_path = cfg.out_path + ".modes.csv";
    rep.diag_path = cfg.out_path + ".diag.txt";
    {
        std::ofstream out(rep.results_path);
        if (!out)
            throw ConfigError("cannot write '" + rep.results_path + "'");
        out << "x,t,quantity,value,error_estimate,flags\n";
        for (const Record& r : records)
            out << fmt17(r.x) << ',' << fmt17(r.t) << ',' << r.quantity << ','
                << fmt17(r.kv.value) << ',' << fmt17(r.kv.error_estimate) << ','
                << r.kv.flags << '\n';
    }
    {
        std::ofstream out(rep.modes_path);
        if (!out)
            throw ConfigError("cannot write '" + rep.modes_path + "'");
        out << mode_set_csv(*modes);
    }
    {
        char line[120];
        std::snprintf(line, sizeof line, "samples: %zu (%d flagged)\n",
                      records.size(), rep.flagged_samples);
        diag += line;
        std::ofstream out(rep.diag_path);
        if (!out)
            throw ConfigError("cannot write '" + rep.diag_path + "'");
        out << diag;
    }
    rep.diagnostics = std::move(diag);
    return rep;
}

std::string dump_modes(const RunConfig& cfg) {
    if (!(cfg.kappa > 0.0))
        throw ConfigError("kappa must be positive");
    if (cfg.n_max < 1)
        throw ConfigError("n_max must be at least 1");
    const ConstitutiveModel model = parse_model(cfg.model_text, cfg.allow_degenerate);
    return mode_set_csv(build_mode_set(model, cfg.kappa, cfg.n_max));
}

} // namespace rodwave
