#pragma once

// JSON run configuration with line-anchored diagnostics.
//
// A file holds either a single run (its blocks at top level) or {"runs": [...]}. Top-level
// "units" and "output" apply to every run. Unknown keys are rejected so that typos surface
// as errors instead of silently falling back to defaults.

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "mesodyn/coupling.hpp"
#include "mesodyn/errors.hpp"
#include "mesodyn/grid.hpp"
#include "mesodyn/master_equation.hpp"
#include "mesodyn/scenario.hpp"
#include "mesodyn/trajectories.hpp"
#include "mesodyn/wigner.hpp"

namespace mesodyn::harness {

using json = nlohmann::ordered_json;

enum class Command { Simulate, Wigner, Master, Tau };
enum class Units { Natural, Paper };

inline std::string command_name(Command c) {
    switch (c) {
        case Command::Simulate: return "simulate";
        case Command::Wigner: return "wigner";
        case Command::Master: return "master";
        case Command::Tau: return "tau";
    }
    return "?";
}

struct SimulateRun {
    std::string name;
    Scenario scenario;
    EnsembleSpec ensemble;
};

struct WignerRun {
    std::string name;
    Scenario scenario;
    SpatialGrid grid;
    std::optional<MomentumAxis> axis;
    double mask_fraction{1e-3};
};

struct MasterRun {
    std::string name;
    StateSpec state;
    PhysParams phys;
    SpatialGrid grid;
    MasterEqParams params;
    std::size_t steps{100};
    std::size_t snapshot_stride{10};
    std::size_t matrix_snapshots{3};  // full-matrix files, evenly spaced including first and last
    double probe_a{0.0};
    double probe_b{0.0};
};

struct TauRun {
    std::string name;
    double mass{1e-3};
    double temperature{300.0};
    double relaxation_time{1e17};
    double separation{1e-2};
};

using Run = std::variant<SimulateRun, WignerRun, MasterRun, TauRun>;

struct RunSet {
    Command command{Command::Simulate};
    Units units{Units::Natural};
    std::filesystem::path out_dir{"out"};
    std::vector<Run> runs;
    std::vector<json> resolved;  // one canonical parameter record per run, hashed into headers
};

/// Command-line values that take precedence over the file.
struct Overrides {
    std::optional<Units> units;
    std::optional<std::filesystem::path> out_dir;
};

// ---------------------------------------------------------------------------------------------
// Diagnostics

struct Source {
    std::string origin;  // file name or "preset:<name>"
    std::string text;    // empty for presets built in memory
};

using PathElem = std::variant<std::string, std::size_t>;
using Path = std::vector<PathElem>;

inline std::string path_string(const Path& p) {
    std::string s;
    for (const auto& e : p) {
        if (const auto* k = std::get_if<std::string>(&e)) s += (s.empty() ? "" : ".") + *k;
        else s += "[" + std::to_string(std::get<std::size_t>(e)) + "]";
    }
    return s.empty() ? "<root>" : s;
}

namespace detail {

// Minimal scanner over text already accepted by the JSON parser; used only to find positions.
struct Scanner {
    const std::string& t;
    std::size_t pos{0};

    void ws() {
        while (pos < t.size() && (t[pos] == ' ' || t[pos] == '\t' || t[pos] == '\n' || t[pos] == '\r')) ++pos;
    }
    std::string string() {
        std::string s;
        ++pos;  // opening quote
        while (pos < t.size() && t[pos] != '"') {
            if (t[pos] == '\\') ++pos;
            if (pos < t.size()) s += t[pos++];
        }
        ++pos;
        return s;
    }
    void value() {
        ws();
        if (pos >= t.size()) return;
        if (t[pos] == '"') {
            string();
            return;
        }
        if (t[pos] == '{' || t[pos] == '[') {
            int depth = 0;
            while (pos < t.size()) {
                const char c = t[pos];
                if (c == '"') {
                    string();
                    continue;
                }
                if (c == '{' || c == '[') ++depth;
                if (c == '}' || c == ']') --depth;
                ++pos;
                if (depth == 0) return;
            }
            return;
        }
        while (pos < t.size() && t[pos] != ',' && t[pos] != '}' && t[pos] != ']') ++pos;
    }
    bool member(const std::string& key) {
        ws();
        if (pos >= t.size() || t[pos] != '{') return false;
        ++pos;
        for (;;) {
            ws();
            if (pos >= t.size() || t[pos] != '"') return false;
            const std::size_t key_pos = pos;
            const std::string k = string();
            ws();
            ++pos;  // ':'
            if (k == key) {
                ws();
                last_key = key_pos;
                return true;
            }
            value();
            ws();
            if (pos < t.size() && t[pos] == ',') ++pos;
            else return false;
        }
    }
    bool element(std::size_t index) {
        ws();
        if (pos >= t.size() || t[pos] != '[') return false;
        ++pos;
        for (std::size_t k = 0; k < index; ++k) {
            value();
            ws();
            if (pos < t.size() && t[pos] == ',') ++pos;
            else return false;
        }
        ws();
        last_key = pos;
        return true;
    }
    std::size_t last_key{0};
};

inline std::pair<std::size_t, std::size_t> line_col(const std::string& t, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < std::min(offset, t.size()); ++i) {
        if (t[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace detail

/// Line and column of the deepest resolvable element of `path`, or {0, 0} without source text.
inline std::pair<std::size_t, std::size_t> locate(const Source& src, const Path& path) {
    if (src.text.empty()) return {0, 0};
    detail::Scanner sc{src.text};
    sc.ws();
    std::size_t best = sc.pos;
    for (const auto& e : path) {
        const bool ok = std::holds_alternative<std::string>(e) ? sc.member(std::get<std::string>(e))
                                                                 : sc.element(std::get<std::size_t>(e));
        if (!ok) break;
        best = sc.last_key;
    }
    return detail::line_col(src.text, best);
}

[[noreturn]] inline void config_fail(const Source& src, const Path& path, const std::string& msg) {
    const auto [line, col] = locate(src, path);
    std::string where = src.origin;
    if (line > 0) where += ":" + std::to_string(line) + ":" + std::to_string(col);
    throw ConfigError(where + ": " + path_string(path) + ": " + msg);
}

/// Checked view of one JSON object; records which keys were read so leftovers can be reported.
class Block {
public:
    Block(const Source& src, const json& j, Path path) : src_(&src), j_(&j), path_(std::move(path)) {
        if (!j.is_object()) fail("expected an object");
    }

    bool has(const std::string& key) const { return j_->contains(key); }

    /// Marks a key as consumed by a caller that reads it directly.
    void mark_used(const std::string& key) { used_.insert(key); }

    double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
        const json* v = get(key, fallback.has_value());
        if (!v) return *fallback;
        if (!v->is_number()) fail_at(key, "expected a number");
        const double d = v->get<double>();
        if (!std::isfinite(d)) fail_at(key, "expected a finite number");
        return d;
    }

    double positive(const std::string& key, std::optional<double> fallback = std::nullopt) {
        const double d = number(key, fallback);
        if (!(d > 0.0)) fail_at(key, "must be positive");
        return d;
    }

    std::size_t count(const std::string& key, std::optional<std::size_t> fallback = std::nullopt) {
        const json* v = get(key, fallback.has_value());
        if (!v) return *fallback;
        if (!v->is_number_integer() || v->get<long long>() < 0) fail_at(key, "expected a nonnegative integer");
        return v->get<std::size_t>();
    }

    std::string text(const std::string& key, std::optional<std::string> fallback = std::nullopt) {
        const json* v = get(key, fallback.has_value());
        if (!v) return *fallback;
        if (!v->is_string()) fail_at(key, "expected a string");
        return v->get<std::string>();
    }

    std::vector<double> numbers(const std::string& key) {
        const json* v = get(key, false);
        if (!v->is_array()) fail_at(key, "expected an array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v->size(); ++i) {
            if (!(*v)[i].is_number()) config_fail(*src_, extend(key, i), "expected a number");
            out.push_back((*v)[i].get<double>());
        }
        return out;
    }

    std::optional<Block> child(const std::string& key) {
        if (!has(key)) return std::nullopt;
        used_.insert(key);
        return Block(*src_, j_->at(key), extend(key));
    }

    Block required_child(const std::string& key) {
        if (!has(key)) fail("missing required block \"" + key + "\"");
        return *child(key);
    }

    /// Reports the first key that no accessor consumed.
    void done() const {
        for (const auto& [k, v] : j_->items())
            if (!used_.count(k)) fail_at(k, "unknown key");
    }

    [[noreturn]] void fail(const std::string& msg) const { config_fail(*src_, path_, msg); }
    [[noreturn]] void fail_at(const std::string& key, const std::string& msg) const {
        config_fail(*src_, extend(key), msg);
    }

    /// Runs f and re-anchors any ConfigError it throws at this block.
    template <class F>
    void check(F&& f) const {
        try {
            f();
        } catch (const ConfigError& e) {
            fail(e.what());
        } catch (const DomainError& e) {
            fail(e.what());
        }
    }

    const Path& path() const { return path_; }

private:
    const json* get(const std::string& key, bool optional) {
        used_.insert(key);
        if (!j_->contains(key)) {
            if (optional) return nullptr;
            fail("missing required key \"" + key + "\"");
        }
        return &j_->at(key);
    }

    Path extend(const std::string& key) const {
        Path p = path_;
        p.emplace_back(key);
        return p;
    }
    Path extend(const std::string& key, std::size_t i) const {
        Path p = extend(key);
        p.emplace_back(i);
        return p;
    }

    const Source* src_;
    const json* j_;
    Path path_;
    std::set<std::string> used_;
};

// ---------------------------------------------------------------------------------------------
// Block readers

namespace detail {

inline PhysParams read_phys(Block& b, Units units) {
    PhysParams p;
    if (units == Units::Paper) {
        for (const char* k : {"hbar", "mass", "omega"})
            if (b.has(k) && b.number(k) != 1.0)
                b.fail_at(k, "units \"paper\" fixes hbar = m = omega = 1");
    }
    p.hbar = b.positive("hbar", 1.0);
    p.mass = b.positive("mass", 1.0);
    p.omega = b.positive("omega", 1.0);
    p.amplitude_a = b.number("amplitude", 1.0);
    p.sigma0 = b.positive("sigma0", 1.0);
    p.drift_u = b.number("drift", 0.0);
    return p;
}

inline Scenario read_scenario(Block b, Units units) {
    const std::string kind = b.text("kind");
    Scenario s;
    if (kind == "ho_stationary") {
        const std::size_t n = b.count("n", 0);
        if (n > 60) b.fail_at("n", "eigenstate index above 60 is not supported");
        s.kind = HOStationary{unsigned(n)};
    } else if (kind == "ho_coherent") {
        s.kind = HOCoherent{};
    } else if (kind == "free_gaussian") {
        s.kind = FreeGaussian{};
    } else {
        b.fail_at("kind", "unknown scenario kind \"" + kind + "\" (expected ho_stationary, ho_coherent, free_gaussian)");
    }
    s.params = read_phys(b, units);
    b.check([&] { s.validate(); });
    b.done();
    return s;
}

inline CouplingLaw read_coupling(std::optional<Block> ob) {
    if (!ob) return PureQuantum{};
    Block& b = *ob;
    const std::string law = b.text("law");
    CouplingLaw out;
    if (law == "pure_quantum") out = PureQuantum{};
    else if (law == "pure_classical") out = PureClassical{};
    else if (law == "fixed") out = FixedCoupling{b.number("lambda")};
    else if (law == "exponential") out = ExponentialRelaxation{b.number("b")};
    else b.fail_at("law", "unknown coupling law \"" + law + "\" (expected pure_quantum, pure_classical, fixed, exponential)");
    b.check([&] { validate(out); });
    b.done();
    return out;
}

inline SpatialGrid read_grid(std::optional<Block> ob, SpatialGrid fallback) {
    if (!ob) return fallback;
    Block& b = *ob;
    SpatialGrid g{b.number("x_min", fallback.x_min), b.number("x_max", fallback.x_max),
                  b.count("n_points", fallback.n_points)};
    b.check([&] { g.validate(); });
    b.done();
    return g;
}

inline double oscillator_scale(const PhysParams& p) { return std::sqrt(p.hbar / (p.mass * p.omega)); }

inline SimulateRun read_simulate(Block& r, Units units, const std::string& name) {
    SimulateRun run;
    run.name = name;
    run.scenario = read_scenario(r.required_child("scenario"), units);
    run.ensemble.coupling = read_coupling(r.child("coupling"));

    Block ib = r.required_child("integrator");
    const double t0 = ib.number("t0", 0.0);
    const double t1 = ib.number("t1");
    const std::size_t stride = ib.count("output_stride", 1);
    IntegratorConfig cfg = default_integrator(run.scenario, t0, t1, stride);
    cfg.dt = ib.positive("dt", cfg.dt);
    ib.check([&] { cfg.validate(); });
    ib.done();
    run.ensemble.integrator = cfg;

    if (auto eb = r.child("ensemble")) {
        if (eb->has("positions")) {
            if (eb->has("members")) eb->fail_at("members", "give either members or positions, not both");
            const auto xs = eb->numbers("positions");
            if (xs.empty()) eb->fail_at("positions", "must not be empty");
            run.ensemble.sampling = ExplicitPositions{xs};
            run.ensemble.n_members = xs.size();
        } else {
            run.ensemble.n_members = eb->count("members", 7);
            if (run.ensemble.n_members < 1) eb->fail_at("members", "must be at least 1");
        }
        eb->done();
    }
    return run;
}

inline WignerRun read_wigner(Block& r, Units units, const std::string& name) {
    WignerRun run;
    run.name = name;
    run.scenario = read_scenario(r.required_child("scenario"), units);
    if (!std::holds_alternative<HOStationary>(run.scenario.kind))
        r.fail_at("scenario", "the wigner command needs an ho_stationary scenario");
    const double l = oscillator_scale(run.scenario.params);
    run.grid = SpatialGrid::symmetric_default(l);
    if (auto pb = r.child("phasespace")) {
        run.grid = read_grid(pb->child("grid"), run.grid);
        if (auto ab = pb->child("momentum_axis")) {
            run.axis = MomentumAxis::symmetric(ab->positive("half_width"), ab->count("n_points", run.grid.size()));
            if (run.axis->n_points < 5) ab->fail_at("n_points", "at least 5 points required");
            ab->done();
        }
        run.mask_fraction = pb->positive("mask_fraction", 1e-3);
        pb->done();
    }
    return run;
}

inline MasterRun read_master(Block& r, Units units, const std::string& name) {
    MasterRun run;
    run.name = name;
    std::optional<Scenario> scn;
    if (auto sb = r.child("scenario")) {
        // the scenario block doubles as the parameter block for pair states
        scn = read_scenario(*sb, units);
        run.phys = scn->params;
    }
    Block pb = r.required_child("phasespace");
    Block st = pb.required_child("state");
    const std::string kind = st.text("kind");
    double reach = 0.0;
    bool oscillator = scn && scn->is_oscillator();
    if (kind == "scenario") {
        if (!scn) st.fail_at("kind", "state kind \"scenario\" needs a scenario block");
        run.state = *scn;
    } else if (kind == "oscillator_pair" || kind == "gaussian_pair") {
        const double x1 = st.number("x1", -4.0), x2 = st.number("x2", 4.0);
        if (x1 == x2) st.fail_at("x2", "x1 and x2 must differ");
        reach = std::max(std::abs(x1), std::abs(x2));
        run.probe_a = x1;
        run.probe_b = x2;
        oscillator = kind == "oscillator_pair";
        if (oscillator) run.state = OscillatorPair{x1, x2, run.phys};
        else run.state = GaussianPair{x1, x2, run.phys};
    } else {
        st.fail_at("kind", "unknown state kind \"" + kind + "\" (expected scenario, oscillator_pair, gaussian_pair)");
    }
    st.done();

    const double width = oscillator ? oscillator_scale(run.phys) : run.phys.sigma0;
    const double half = 8.0 * std::max({width, reach});
    run.grid = read_grid(pb.child("grid"), SpatialGrid{-half, half, 256});

    Block mb = pb.required_child("master");
    const std::string mode = mb.text("mode", "full");
    if (mode == "full") run.params.mode = MasterMode::Full;
    else if (mode == "decoherence_only") run.params.mode = MasterMode::DecoherenceOnly;
    else if (mode == "unitary_only") run.params.mode = MasterMode::UnitaryOnly;
    else mb.fail_at("mode", "unknown mode \"" + mode + "\" (expected full, decoherence_only, unitary_only)");
    run.params.gamma = mb.number("gamma", 0.0);
    run.params.D = mb.number("D", 0.0);
    run.params.dt = mb.positive("dt");
    run.params.mass = run.phys.mass;
    run.params.hbar = run.phys.hbar;
    const std::string pot = mb.text("potential", oscillator ? "harmonic" : "free");
    if (pot == "harmonic") run.params.potential = HarmonicPotential{run.phys.omega};
    else if (pot == "free") run.params.potential = FreePotential{};
    else mb.fail_at("potential", "unknown potential \"" + pot + "\" (expected free, harmonic)");
    run.steps = mb.count("steps");
    if (run.steps < 1) mb.fail_at("steps", "must be at least 1");
    run.snapshot_stride = mb.count("snapshot_stride", std::max<std::size_t>(1, run.steps / 20));
    if (run.snapshot_stride < 1) mb.fail_at("snapshot_stride", "must be at least 1");
    run.matrix_snapshots = mb.count("matrix_snapshots", 3);
    mb.check([&] {
        run.params.validate();
        if (run.params.mode == MasterMode::Full && friction_courant_number(run.grid, run.params) > 1.0)
            throw ConfigError("friction step violates the CFL bound 2 gamma max|x - x'| dt / dx <= 1 (got " +
                              std::to_string(friction_courant_number(run.grid, run.params)) + ")");
    });
    mb.done();

    if (pb.has("probe")) {
        const auto pr = pb.numbers("probe");
        if (pr.size() != 2) pb.fail_at("probe", "expected [x_a, x_b]");
        run.probe_a = pr[0];
        run.probe_b = pr[1];
    } else if (kind == "scenario") {
        pb.fail("missing required key \"probe\" for a single-scenario state");
    }
    pb.check([&] { (void)discretize_state(run.state, run.grid, 0.0); });
    pb.done();
    return run;
}

inline TauRun read_tau(Block& r, const std::string& name) {
    TauRun run;
    run.name = name;
    Block tb = r.required_child("tau");
    run.mass = tb.positive("mass");
    run.temperature = tb.positive("temperature");
    run.relaxation_time = tb.positive("relaxation_time");
    run.separation = tb.positive("separation");
    tb.done();
    return run;
}

}  // namespace detail

// ---------------------------------------------------------------------------------------------
// Canonical records

inline json to_json(const Scenario& s) {
    json j;
    std::visit(mesodyn::detail::overloaded{
                   [&](HOStationary h) {
                       j["kind"] = "ho_stationary";
                       j["n"] = h.n;
                   },
                   [&](HOCoherent) { j["kind"] = "ho_coherent"; },
                   [&](FreeGaussian) { j["kind"] = "free_gaussian"; },
               },
               s.kind);
    const auto& p = s.params;
    j["hbar"] = p.hbar;
    j["mass"] = p.mass;
    j["omega"] = p.omega;
    j["amplitude"] = p.amplitude_a;
    j["sigma0"] = p.sigma0;
    j["drift"] = p.drift_u;
    return j;
}

inline json to_json(const CouplingLaw& law) {
    return std::visit(mesodyn::detail::overloaded{
                          [](PureQuantum) { return json{{"law", "pure_quantum"}}; },
                          [](PureClassical) { return json{{"law", "pure_classical"}}; },
                          [](FixedCoupling f) { return json{{"law", "fixed"}, {"lambda", f.lambda0}}; },
                          [](ExponentialRelaxation e) { return json{{"law", "exponential"}, {"b", e.b}}; },
                      },
                      law);
}

inline json to_json(const SpatialGrid& g) {
    return json{{"x_min", g.x_min}, {"x_max", g.x_max}, {"n_points", g.n_points}};
}

inline json to_json(const Run& run) {
    return std::visit(
        mesodyn::detail::overloaded{
            [](const SimulateRun& r) {
                json j{{"name", r.name}, {"scenario", to_json(r.scenario)}, {"coupling", to_json(r.ensemble.coupling)}};
                const auto& c = r.ensemble.integrator;
                j["integrator"] = json{{"t0", c.t0}, {"t1", c.t1}, {"dt", c.dt}, {"output_stride", c.output_stride}};
                if (const auto* e = std::get_if<ExplicitPositions>(&r.ensemble.sampling))
                    j["ensemble"] = json{{"positions", e->positions}};
                else
                    j["ensemble"] = json{{"members", r.ensemble.n_members}};
                return j;
            },
            [](const WignerRun& r) {
                json ps{{"grid", to_json(r.grid)}, {"mask_fraction", r.mask_fraction}};
                if (r.axis) ps["momentum_axis"] = json{{"half_width", -r.axis->p_min}, {"n_points", r.axis->n_points}};
                return json{{"name", r.name}, {"scenario", to_json(r.scenario)}, {"phasespace", ps}};
            },
            [](const MasterRun& r) {
                json state = std::visit(
                    mesodyn::detail::overloaded{
                        [](const Scenario&) { return json{{"kind", "scenario"}}; },
                        [](const OscillatorPair& o) { return json{{"kind", "oscillator_pair"}, {"x1", o.x1}, {"x2", o.x2}}; },
                        [](const GaussianPair& g) { return json{{"kind", "gaussian_pair"}, {"x1", g.x1}, {"x2", g.x2}}; },
                    },
                    r.state);
                const char* mode = r.params.mode == MasterMode::Full              ? "full"
                                   : r.params.mode == MasterMode::DecoherenceOnly ? "decoherence_only"
                                                                                  : "unitary_only";
                json master{{"mode", mode},
                            {"gamma", r.params.gamma},
                            {"D", r.params.D},
                            {"dt", r.params.dt},
                            {"potential", std::holds_alternative<HarmonicPotential>(r.params.potential) ? "harmonic" : "free"},
                            {"steps", r.steps},
                            {"snapshot_stride", r.snapshot_stride},
                            {"matrix_snapshots", r.matrix_snapshots}};
                json scn = std::holds_alternative<Scenario>(r.state) ? to_json(std::get<Scenario>(r.state))
                                                                     : to_json(Scenario::free_gaussian(r.phys));
                return json{{"name", r.name},
                            {"scenario", scn},
                            {"phasespace",
                             {{"grid", to_json(r.grid)},
                              {"state", state},
                              {"master", master},
                              {"probe", {r.probe_a, r.probe_b}}}}};
            },
            [](const TauRun& r) {
                return json{{"name", r.name},
                            {"tau",
                             {{"mass", r.mass},
                              {"temperature", r.temperature},
                              {"relaxation_time", r.relaxation_time},
                              {"separation", r.separation}}}};
            },
        },
        run);
}

// ---------------------------------------------------------------------------------------------
// Entry points

inline RunSet parse_config(const json& root, const Source& src, Command command, const Overrides& ov = {}) {
    Block top(src, root, {});
    RunSet set;
    set.command = command;

    if (top.has("command")) {
        const std::string c = top.text("command");
        if (c != command_name(command))
            top.fail_at("command", "config is for \"" + c + "\" but the " + command_name(command) + " command was invoked");
    }
    const std::string units = top.text("units", "natural");
    if (units == "natural") set.units = Units::Natural;
    else if (units == "paper") set.units = Units::Paper;
    else top.fail_at("units", "expected \"natural\" or \"paper\"");
    if (ov.units) set.units = *ov.units;

    if (auto ob = top.child("output")) {
        set.out_dir = ob->text("directory", "out");
        ob->done();
    }
    if (ov.out_dir) set.out_dir = *ov.out_dir;

    auto read_one = [&](Block& r, const std::string& fallback_name) {
        const std::string name = r.text("name", fallback_name);
        if (name.empty() || name.find_first_of("/\\ ,") != std::string::npos)
            r.fail_at("name", "run names must be nonempty and free of '/', '\\\\', ' ' and ','");
        for (const auto& existing : set.runs)
            if (std::visit([](const auto& x) { return x.name; }, existing) == name)
                r.fail_at("name", "duplicate run name \"" + name + "\"");
        switch (command) {
            case Command::Simulate: set.runs.emplace_back(detail::read_simulate(r, set.units, name)); break;
            case Command::Wigner: set.runs.emplace_back(detail::read_wigner(r, set.units, name)); break;
            case Command::Master: set.runs.emplace_back(detail::read_master(r, set.units, name)); break;
            case Command::Tau: set.runs.emplace_back(detail::read_tau(r, name)); break;
        }
    };

    if (top.has("runs")) {
        const json& arr = root.at("runs");
        if (!arr.is_array() || arr.empty()) top.fail_at("runs", "expected a nonempty array of run objects");
        top.mark_used("runs");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            Block r(src, arr[i], Path{std::string("runs"), i});
            read_one(r, "run" + std::to_string(i));
            r.done();
        }
    } else {
        read_one(top, "run");
    }
    top.done();

    for (const auto& r : set.runs) set.resolved.push_back(to_json(r));
    return set;
}

inline RunSet parse_config_text(const std::string& text, const std::string& origin, Command command,
                                const Overrides& ov = {}) {
    Source src{origin, text};
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = detail::line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        std::string what = e.what();
        const auto cut = what.find(": ", what.find("parse error"));
        throw ConfigError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": invalid JSON: " + (cut == std::string::npos ? what : what.substr(cut + 2)));
    }
    return parse_config(root, src, command, ov);
}

inline RunSet load_config_file(const std::filesystem::path& path, Command command, const Overrides& ov = {}) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path.string() + ": cannot open config file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path.string(), command, ov);
}

}  // namespace mesodyn::harness
