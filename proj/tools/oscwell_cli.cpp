// oscwell: command-line driver. Every subcommand writes one CSV table to
// --out (or stdout) and logs the resolved configuration to stderr.
#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "oscwell/cavity.hpp"
#include "oscwell/config.hpp"
#include "oscwell/csv.hpp"
#include "oscwell/error.hpp"
#include "oscwell/evolve.hpp"
#include "oscwell/grid.hpp"
#include "oscwell/perturb.hpp"
#include "oscwell/scan.hpp"
#include "oscwell/specfun.hpp"
#include "oscwell/twolevel.hpp"

namespace {

using namespace oscwell;

struct CommonFlags {
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<int> threads;
    std::string out;
    std::optional<int> l;
    std::optional<int> levels;
    std::string input;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "key = value configuration file");
    cmd->add_option("--set", f.overrides, "override one key, e.g. --set epsilon=0.02")
        ->allow_extra_args(false);
    cmd->add_option("--threads", f.threads, "worker threads (0 = all cores)");
    cmd->add_option("--out", f.out, "output CSV path (default: stdout)");
}

RunConfig resolve(const CommonFlags& f) {
    std::vector<Setting> settings;
    if (!f.config_path.empty()) {
        auto from_file = read_settings(read_text_file(f.config_path));
        for (auto& s : from_file) {
            s.origin = f.config_path + " " + s.origin;
        }
        settings = std::move(from_file);
    }
    // Dedicated flags rank below explicit --set overrides given after them.
    if (f.l) {
        settings.push_back({"l", std::to_string(*f.l), "--l"});
    }
    if (f.levels) {
        settings.push_back({"levels", std::to_string(*f.levels), "--levels"});
    }
    if (f.threads) {
        settings.push_back({"threads", std::to_string(*f.threads), "--threads"});
    }
    if (!f.out.empty()) {
        settings.push_back({"output", f.out, "--out"});
    }
    for (const auto& o : f.overrides) {
        settings.push_back(read_override(o));
    }
    auto cfg = resolve_config(settings);
    for (const auto& line : cfg.provenance) {
        std::cerr << "config: " << line << '\n';
    }
    return cfg;
}

void emit(const CsvTable& table, const RunConfig& cfg) {
    const auto text = format_csv(table);
    if (cfg.output.empty()) {
        std::cout << text << std::flush;
    } else {
        write_text_file(cfg.output, text);
    }
}

double drive_frequency(const RunConfig& cfg) {
    return cfg.nu ? *cfg.nu : eigen_energy(cfg.l, 2) - eigen_energy(cfg.l, 1);
}

TimeSeries run_numeric(const RunConfig& cfg, const CavityDrive& drive, double t_max) {
    const RadialGrid grid(cfg.grid_points);
    const Eigenbasis basis(cfg.l, cfg.basis_size, grid);
    RunOptions opts;
    opts.t_max = t_max;
    opts.dt = cfg.dt.value_or(0.0);
    opts.sample_stride = cfg.sample_stride;
    return evolve_run(make_initial(cfg.initial(), basis, grid), drive, basis, opts);
}

void cmd_eigen(const RunConfig& cfg) {
    CsvTable t;
    t.header = {"n", "zero", "energy"};
    for (int n = 1; n <= cfg.levels; ++n) {
        t.rows.push_back({static_cast<double>(n), bessel_zero(cfg.l, n), eigen_energy(cfg.l, n)});
    }
    emit(t, cfg);
}

void cmd_evolve(const RunConfig& cfg) {
    const CavityDrive drive(cfg.epsilon, drive_frequency(cfg));
    const double t_max = cfg.t_max.value_or(20.0 * drive.period());
    emit(timeseries_table(run_numeric(cfg, drive, t_max)), cfg);
}

void cmd_perturb(const RunConfig& cfg) {
    if (cfg.init_kind != InitialCondition::Kind::eigen) {
        throw ConfigError("perturb: init_kind must be eigen");
    }
    const CavityDrive drive(cfg.epsilon, drive_frequency(cfg));
    const double t_max = cfg.t_max.value_or(5.0 * drive.period());
    const auto num = run_numeric(cfg, drive, t_max);
    const auto pert = perturbative_energy(cfg.n_init, drive, num.t, cfg.l, cfg.basis_size);
    CsvTable t;
    t.header = {"t", "U_pert", "E_pert", "U_num", "E_num"};
    for (std::size_t i = 0; i < num.size(); ++i) {
        t.rows.push_back({num.t[i], pert.u[i], pert.e_fixed[i], num.u[i], num.e_fixed[i]});
    }
    emit(t, cfg);
}

void cmd_twolevel(const RunConfig& cfg) {
    const auto model = make_two_level_model(cfg.epsilon, cfg.l);
    const double t_max = cfg.t_max.value_or(model.rabi_period);
    const double dt = cfg.dt.value_or(default_time_step(model.omega21)) * cfg.sample_stride;
    const auto samples = static_cast<long long>(std::ceil(t_max / dt * (1.0 - 1e-12)));
    CsvTable t;
    t.header = {"t", "U", "p1", "p2"};
    for (long long i = 0; i <= samples; ++i) {
        const double ti = i == samples ? t_max : static_cast<double>(i) * dt;
        const auto p = two_level_populations(model, ti);
        t.rows.push_back({ti, two_level_energy(model, ti), p[0], p[1]});
    }
    emit(t, cfg);
}

SimParams sim_params(const RunConfig& cfg) {
    SimParams p;
    p.grid_points = cfg.grid_points;
    p.dt = cfg.dt.value_or(0.0);
    p.t_max = cfg.t_max.value_or(0.0);
    p.sample_stride = cfg.sample_stride;
    p.levels = cfg.basis_size;
    p.threads = cfg.threads;
    return p;
}

void cmd_scan(const RunConfig& cfg) {
    const std::vector<double> eps = cfg.eps_list.empty() ? std::vector<double>{cfg.epsilon} : cfg.eps_list;
    const std::vector<double> nus = cfg.nu_list.empty() ? std::vector<double>{drive_frequency(cfg)} : cfg.nu_list;
    std::vector<std::pair<double, double>> points;
    for (const double e : eps) {
        for (const double nu : nus) {
            points.emplace_back(nu, e);
        }
    }
    const auto result = run_scan(points, cfg.l, sim_params(cfg));
    for (const auto& p : result.points) {
        if (!p.ok) {
            std::cerr << "scan: point nu=" << p.nu << " eps=" << p.eps << " failed: " << p.error << '\n';
        } else if (p.at_window_end) {
            std::cerr << "scan: point nu=" << p.nu << " eps=" << p.eps
                      << " peaks at the window end; widen t_max\n";
        }
    }
    emit(scan_table(result), cfg);
}

void cmd_fit(const RunConfig& cfg, const std::string& input) {
    if (input.empty()) {
        throw ConfigError("fit: --input PATH is required");
    }
    const auto scan = scan_from_table(parse_csv(read_text_file(input)));
    const auto fit = breit_wigner_fit(scan.points);
    CsvTable t;
    t.header = {"nu0", "gamma", "strength", "baseline", "peak", "residual_norm"};
    t.rows.push_back({fit.nu0, fit.gamma, fit.strength, fit.baseline, fit.peak(), fit.residual_norm});
    emit(t, cfg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum particle in an oscillating spherical well"};
    app.require_subcommand(1);

    CommonFlags flags;
    auto* eigen = app.add_subcommand("eigen", "Bessel zeros and static energies");
    auto* evolve = app.add_subcommand("evolve", "time series of a driven run");
    auto* perturb = app.add_subcommand("perturb", "first-order perturbation theory vs numerics");
    auto* twolevel = app.add_subcommand("twolevel", "resonant two-level model curves");
    auto* scan = app.add_subcommand("scan", "maximum scaled energy over frequencies/amplitudes");
    auto* fit = app.add_subcommand("fit", "Breit-Wigner fit of a scan CSV");
    for (auto* cmd : {eigen, evolve, perturb, twolevel, scan, fit}) {
        add_common(cmd, flags);
    }
    eigen->add_option("--l", flags.l, "angular momentum");
    eigen->add_option("--levels", flags.levels, "number of levels");
    fit->add_option("--input", flags.input, "scan CSV to fit")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        const auto cfg = resolve(flags);
        if (*eigen) {
            cmd_eigen(cfg);
        } else if (*evolve) {
            cmd_evolve(cfg);
        } else if (*perturb) {
            cmd_perturb(cfg);
        } else if (*twolevel) {
            cmd_twolevel(cfg);
        } else if (*scan) {
            cmd_scan(cfg);
        } else if (*fit) {
            cmd_fit(cfg, flags.input);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(e.kind());
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(ErrorKind::config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
