#pragma once

// Built-in run sets, one per panel group. Each preset is an ordinary JSON config and is
// parsed by the same reader as user files.
//
// Time windows:
//   fig1  oscillator eigenstates n = 0, 1, 2 over 50 periods, long enough for b = 1e-4 to act
//   fig2  coherent packet a = 3 over 3 periods
//   fig3  free packet, sigma0 = 5 (spreading time m sigma0^2 / hbar = 25), t in [0, 100]
//   fig4  the fig3 packets on the mirrored window t in [-100, 100]; lambda is held at 0 for t < 0

#include <numbers>
#include <string>
#include <vector>

#include "mesodyn/harness/config.hpp"
#include "mesodyn/harness/output.hpp"

namespace mesodyn::harness {

namespace detail {

inline std::string b_tag(double b) {
    if (b == 0.0) return "b0";
    std::string s = fmt_short(b);
    for (auto& c : s)
        if (c == '.') c = 'p';
    return "b" + s;
}

inline json coupling_for(double b) {
    return b == 0.0 ? json{{"law", "pure_quantum"}} : json{{"law", "exponential"}, {"b", b}};
}

inline json fig1() {
    const double period = 2.0 * std::numbers::pi;
    json runs = json::array();
    for (unsigned n : {0u, 1u, 2u})
        for (double b : {0.0, 1e-4, 0.01, 0.7})
            runs.push_back({{"name", "fig1_n" + std::to_string(n) + "_" + b_tag(b)},
                            {"scenario", {{"kind", "ho_stationary"}, {"n", n}}},
                            {"coupling", coupling_for(b)},
                            {"integrator", {{"t0", 0.0}, {"t1", 50.0 * period}, {"dt", period / 2000.0}, {"output_stride", 100}}},
                            {"ensemble", {{"members", 7}}}});
    return json{{"command", "simulate"}, {"runs", runs}};
}

inline json fig2() {
    const double period = 2.0 * std::numbers::pi;
    json runs = json::array();
    for (double b : {0.0, 0.1, 1.0, 5.0})
        runs.push_back({{"name", "fig2_" + b_tag(b)},
                        {"scenario", {{"kind", "ho_coherent"}, {"amplitude", 3.0}}},
                        {"coupling", coupling_for(b)},
                        {"integrator", {{"t0", 0.0}, {"t1", 3.0 * period}, {"dt", period / 2000.0}, {"output_stride", 10}}},
                        {"ensemble", {{"members", 7}}}});
    return json{{"command", "simulate"}, {"runs", runs}};
}

inline json free_packets(const std::string& tag, double t0, double t1) {
    const double sigma0 = 5.0;
    const double tau_s = sigma0 * sigma0;
    json runs = json::array();
    for (double b : {0.0, 0.5, 1.0, 5.0})
        runs.push_back({{"name", tag + "_" + b_tag(b)},
                        {"scenario", {{"kind", "free_gaussian"}, {"sigma0", sigma0}}},
                        {"coupling", coupling_for(b)},
                        {"integrator", {{"t0", t0}, {"t1", t1}, {"dt", tau_s / 2000.0}, {"output_stride", 40}}},
                        {"ensemble", {{"members", 7}}}});
    return json{{"command", "simulate"}, {"runs", runs}};
}

inline json wigner_levels() {
    json runs = json::array();
    for (unsigned n : {0u, 1u, 2u})
        runs.push_back({{"name", "ho_n" + std::to_string(n)},
                        {"scenario", {{"kind", "ho_stationary"}, {"n", n}}},
                        {"phasespace", {{"grid", {{"x_min", -8.0}, {"x_max", 8.0}, {"n_points", 256}}}}}});
    return json{{"command", "wigner"}, {"runs", runs}};
}

// Two unit Gaussians at -+4 on the default +-32 grid; D(x1 - x2)^2 / hbar^2 = 0.064.
inline json master_fg() {
    return json{{"command", "master"},
                {"runs",
                 json::array({{{"name", "fg_decoherence"},
                               {"scenario", {{"kind", "free_gaussian"}, {"sigma0", 1.0}}},
                               {"phasespace",
                                {{"grid", {{"x_min", -32.0}, {"x_max", 32.0}, {"n_points", 256}}},
                                 {"state", {{"kind", "gaussian_pair"}, {"x1", -4.0}, {"x2", 4.0}}},
                                 {"master",
                                  {{"mode", "decoherence_only"},
                                   {"D", 1e-3},
                                   {"dt", 0.1},
                                   {"steps", 200},
                                   {"snapshot_stride", 10},
                                   {"matrix_snapshots", 3}}}}}}})}};
}

// 1 g at room temperature with a 1 cm separation.
inline json tau_gram() {
    return json{{"command", "tau"},
                {"runs",
                 json::array({{{"name", "gram_room_temperature"},
                               {"tau",
                                {{"mass", 1e-3}, {"temperature", 300.0}, {"relaxation_time", 1e17}, {"separation", 1e-2}}}}})}};
}

}  // namespace detail

struct PresetInfo {
    std::string name;
    Command command;
    std::string description;
};

inline const std::vector<PresetInfo>& preset_catalog() {
    static const std::vector<PresetInfo> c{
        {"fig1", Command::Simulate, "oscillator eigenstates n=0,1,2; b in {0, 1e-4, 0.01, 0.7}; 50 periods"},
        {"fig2", Command::Simulate, "coherent packet a=3; b in {0, 0.1, 1, 5}; 3 periods"},
        {"fig3", Command::Simulate, "free packet sigma0=5; b in {0, 0.5, 1, 5}; t in [0, 100]"},
        {"fig4", Command::Simulate, "free packet sigma0=5; b in {0, 0.5, 1, 5}; t in [-100, 100]"},
        {"ho_levels", Command::Wigner, "Wigner grids and energy fields for n=0,1,2"},
        {"fg_decoherence", Command::Master, "Gaussian pair at -+4, decoherence only, D=1e-3"},
        {"gram", Command::Tau, "1 g, 300 K, tau_R = 1e17 s, separation 1 cm"},
    };
    return c;
}

/// The preset's JSON document; throws ConfigError for unknown names or a command mismatch.
inline json preset_json(const std::string& name, Command command) {
    const PresetInfo* info = nullptr;
    for (const auto& p : preset_catalog())
        if (p.name == name) info = &p;
    if (!info) {
        std::string known;
        for (const auto& p : preset_catalog()) known += (known.empty() ? "" : ", ") + p.name;
        throw ConfigError("unknown preset \"" + name + "\" (known: " + known + ")");
    }
    if (info->command != command)
        throw ConfigError("preset \"" + name + "\" belongs to the " + command_name(info->command) + " command");
    if (name == "fig1") return detail::fig1();
    if (name == "fig2") return detail::fig2();
    if (name == "fig3") return detail::free_packets("fig3", 0.0, 100.0);
    if (name == "fig4") return detail::free_packets("fig4", -100.0, 100.0);
    if (name == "ho_levels") return detail::wigner_levels();
    if (name == "fg_decoherence") return detail::master_fg();
    return detail::tau_gram();
}

inline RunSet load_preset(const std::string& name, Command command, const Overrides& ov = {}) {
    const Source src{"preset:" + name, ""};
    return parse_config(preset_json(name, command), src, command, ov);
}

}  // namespace mesodyn::harness
