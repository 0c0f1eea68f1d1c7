// mesodyn: command-line front end for trajectory ensembles, Wigner grids, master-equation runs
// and decoherence-time estimates.
//
// Exit codes: 0 success, 2 configuration or usage error, 3 numerical failure.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "mesodyn/harness/commands.hpp"
#include "mesodyn/harness/presets.hpp"

namespace {

using namespace mesodyn;
using namespace mesodyn::harness;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonArgs {
    std::string config;
    std::string preset;
    std::string out;
    std::string units;
    bool plot_data{false};
    bool print_config{false};
};

struct TauArgs {
    std::optional<double> mass, temperature, relaxation_time, separation;
};

void add_common(CLI::App* sub, CommonArgs& a) {
    sub->add_option("--config", a.config, "JSON run configuration");
    sub->add_option("--preset", a.preset, "built-in run set (see --list-presets)");
    sub->add_option("--out", a.out, "output directory (overrides the config)");
    sub->add_option("--units", a.units, "natural | paper")->check(CLI::IsMember({"natural", "paper"}));
    sub->add_flag("--plot-data", a.plot_data, "also write per-panel series files");
    sub->add_flag("--print-config", a.print_config, "print the resolved configuration as JSON and exit");
}

RunSet build_run_set(Command cmd, const CommonArgs& a, const TauArgs& tau) {
    Overrides ov;
    if (!a.units.empty()) ov.units = a.units == "paper" ? Units::Paper : Units::Natural;
    if (!a.out.empty()) ov.out_dir = a.out;

    const bool tau_flags = tau.mass || tau.temperature || tau.relaxation_time || tau.separation;
    if (!a.config.empty() && !a.preset.empty()) throw UsageError("give either --config or --preset, not both");

    RunSet set;
    if (!a.config.empty()) {
        set = load_config_file(a.config, cmd, ov);
    } else if (!a.preset.empty()) {
        set = load_preset(a.preset, cmd, ov);
    } else if (cmd == Command::Tau && tau_flags) {
        if (!(tau.mass && tau.temperature && tau.relaxation_time && tau.separation))
            throw UsageError("tau needs --mass, --temperature, --relaxation-time and --separation (or a config)");
        set.command = Command::Tau;
        set.runs.emplace_back(TauRun{"tau", *tau.mass, *tau.temperature, *tau.relaxation_time, *tau.separation});
        set.resolved.push_back(to_json(set.runs.back()));
        if (ov.units) set.units = *ov.units;
        if (ov.out_dir) set.out_dir = *ov.out_dir;
    } else {
        throw UsageError("one of --config or --preset is required");
    }

    if (cmd == Command::Tau && tau_flags) {
        // flags override every run's values
        for (std::size_t i = 0; i < set.runs.size(); ++i) {
            auto& r = std::get<TauRun>(set.runs[i]);
            if (tau.mass) r.mass = *tau.mass;
            if (tau.temperature) r.temperature = *tau.temperature;
            if (tau.relaxation_time) r.relaxation_time = *tau.relaxation_time;
            if (tau.separation) r.separation = *tau.separation;
            set.resolved[i] = to_json(set.runs[i]);
        }
    }
    if (cmd == Command::Tau)
        for (const auto& run : set.runs) {
            const auto& r = std::get<TauRun>(run);
            if (!(r.mass > 0.0 && r.temperature > 0.0 && r.relaxation_time > 0.0 && r.separation > 0.0))
                throw UsageError("tau inputs must all be strictly positive");
        }
    return set;
}

int run_command(Command cmd, const CommonArgs& a, const TauArgs& tau) {
    const RunSet set = build_run_set(cmd, a, tau);
    if (a.print_config) {
        json doc{{"command", command_name(cmd)},
                 {"units", set.units == Units::Paper ? "paper" : "natural"},
                 {"output", {{"directory", set.out_dir.string()}}},
                 {"runs", set.resolved}};
        std::cout << doc.dump(2) << '\n';
        return 0;
    }
    ExecOptions opt;
    opt.plot_data = a.plot_data;
    // tau prints to the terminal and writes files only when a directory was asked for
    opt.write_files = cmd != Command::Tau || !a.out.empty();
    const auto results = execute(set, opt, std::cout);
    for (const auto& r : results)
        if (!r.files.empty())
            std::cout << r.name << ": " << r.files.size() << " file(s) in " << set.out_dir.string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mesodyn: quantum-to-classical trajectory and phase-space experiments"};
    app.require_subcommand(0, 1);
    bool list_presets = false;
    app.add_flag("--list-presets", list_presets, "list the built-in presets and exit");

    CommonArgs args;
    TauArgs tau;
    auto* sim = app.add_subcommand("simulate", "trajectory ensembles under a coupling law");
    auto* wig = app.add_subcommand("wigner", "Wigner grid and energy field of an oscillator eigenstate");
    auto* mas = app.add_subcommand("master", "density-matrix evolution and coherence decay fit");
    auto* tau_cmd = app.add_subcommand("tau", "thermal wavelength, relaxation and decoherence times (SI)");
    for (auto* s : {sim, wig, mas, tau_cmd}) add_common(s, args);
    tau_cmd->add_option("--mass", tau.mass, "mass in kg");
    tau_cmd->add_option("--temperature", tau.temperature, "bath temperature in K");
    tau_cmd->add_option("--relaxation-time", tau.relaxation_time, "tau_R = 1/gamma in s");
    tau_cmd->add_option("--separation", tau.separation, "superposition separation in m");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    if (list_presets) {
        for (const auto& p : preset_catalog())
            std::cout << p.name << " (" << command_name(p.command) << "): " << p.description << '\n';
        return 0;
    }

    Command cmd;
    if (sim->parsed()) cmd = Command::Simulate;
    else if (wig->parsed()) cmd = Command::Wigner;
    else if (mas->parsed()) cmd = Command::Master;
    else if (tau_cmd->parsed()) cmd = Command::Tau;
    else {
        std::cerr << app.help();
        return kExitConfig;
    }

    try {
        return run_command(cmd, args, tau);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IntegrationError& e) {
        std::cerr << "numerical failure: " << e.what() << " (last good t = " << fmt(e.last_good_time()) << ")\n";
        return kExitNumerical;
    } catch (const FitError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const DegenerateInputError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "output error: " << e.what() << '\n';
        return kExitConfig;
    }
}
