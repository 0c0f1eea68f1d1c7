#pragma once

// The four harness commands. Each writes its files under the run set's output directory and
// returns one key,value report per run.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "mesodyn/coupling.hpp"
#include "mesodyn/grid.hpp"
#include "mesodyn/harness/config.hpp"
#include "mesodyn/harness/output.hpp"
#include "mesodyn/master_equation.hpp"
#include "mesodyn/trajectories.hpp"
#include "mesodyn/wigner.hpp"

namespace mesodyn::harness {

struct ExecOptions {
    bool plot_data{false};
    bool write_files{true};
};

struct RunResult {
    std::string name;
    Report report;
    std::vector<std::filesystem::path> files;
};

inline std::string units_note(Units u) {
    return u == Units::Paper ? "units paper: hbar = m = omega = 1, t in units of 1e21 s" : "units natural";
}

inline std::string run_hash(const RunSet& set, std::size_t i) {
    const json record{{"command", command_name(set.command)},
                      {"units", set.units == Units::Paper ? "paper" : "natural"},
                      {"run", set.resolved.at(i)}};
    return fnv1a_hex(record.dump());
}

namespace detail {

struct Context {
    const RunSet& set;
    std::size_t index;
    const ExecOptions& opt;
    RunResult& result;

    FileHeader header(std::vector<std::string> extra = {}) const {
        FileHeader h{run_hash(set, index), result.name,
                     {set.command == Command::Tau ? std::string("units SI") : units_note(set.units)}};
        for (auto& e : extra) h.notes.push_back(std::move(e));
        return h;
    }
    std::filesystem::path file(const std::string& suffix) const { return set.out_dir / (result.name + suffix); }
    void finish(TextFile& f) const {
        f.close();
        result.files.push_back(f.path());
    }
    void write_report(const std::string& suffix) const {
        if (!opt.write_files) return;
        const auto path = file(suffix);
        result.report.write(path, header());
        result.files.push_back(path);
    }
};

inline void simulate(const SimulateRun& run, const Context& ctx) {
    const auto records = run_ensemble(run.scenario, run.ensemble);
    const std::string scn = run.scenario.name();
    const std::string law = describe(run.ensemble.coupling);

    if (ctx.opt.write_files) {
        TextFile f(ctx.file(".csv"), ctx.header({"scenario " + scn, "coupling " + law}));
        f.line("member,t,x,v,lambda,energy");
        for (std::size_t m = 0; m < records.size(); ++m) {
            const auto& r = records[m];
            for (std::size_t k = 0; k < r.size(); ++k)
                f.row(m, r.times[k], r.positions[k], r.velocities[k], r.lambdas[k], r.energies[k]);
        }
        ctx.finish(f);
    }

    const auto crossings = detect_crossings(records);
    const auto s = spreading_metrics(records);
    const std::size_t nt = s.times.size();

    double displacement = 0.0;
    for (const auto& r : records)
        for (double x : r.positions) displacement = std::max(displacement, std::abs(x - r.positions.front()));

    // relative change of the spread over the final quarter of the window
    const double t_quarter = s.times.front() + 0.75 * (s.times.back() - s.times.front());
    double quarter_change = 0.0;
    for (std::size_t k = 0; k < nt; ++k)
        if (s.times[k] >= t_quarter && s.spread.back() > 0.0)
            quarter_change = std::max(quarter_change, std::abs(s.spread[k] - s.spread.back()) / s.spread.back());

    Report& rep = ctx.result.report;
    rep.add("scenario", scn);
    rep.add("coupling", law);
    rep.add("members", records.size());
    rep.add("samples", nt);
    rep.add("t0", run.ensemble.integrator.t0);
    rep.add("t1", s.times.back());
    rep.add("dt", run.ensemble.integrator.dt);
    rep.add("crossings", crossings.size());
    double first = std::numeric_limits<double>::infinity();
    for (const auto& c : crossings) first = std::min(first, c.t_after);
    rep.add("first_crossing_t", crossings.empty() ? std::string("none") : fmt(first));
    rep.add("max_displacement", displacement);
    rep.add("spread_initial", s.spread.front());
    rep.add("spread_final", s.spread.back());
    rep.add("spread_final_quarter_rel_change", quarter_change);
    rep.add("max_accel_initial", s.max_accel.empty() ? 0.0 : s.max_accel.front());
    rep.add("max_accel_final", s.max_accel.empty() ? 0.0 : s.max_accel.back());
    rep.add("lambda_final", records.front().lambdas.back());
    double e_mean = 0.0;
    for (const auto& r : records) e_mean += r.energies.back();
    rep.add("energy_final_mean", e_mean / double(records.size()));
    for (std::size_t m = 0; m < records.size(); ++m) rep.add("energy_final_" + std::to_string(m), records[m].energies.back());
    ctx.write_report("_summary.csv");

    if (ctx.opt.plot_data && ctx.opt.write_files) {
        TextFile xf(ctx.file("_x.csv"), ctx.header({"positions per member, one column each"}));
        std::string head = "t";
        for (std::size_t m = 0; m < records.size(); ++m) head += ",x" + std::to_string(m);
        xf.line(head);
        for (std::size_t k = 0; k < nt; ++k) {
            std::string line = fmt(s.times[k]);
            for (const auto& r : records) line += "," + fmt(r.positions[k]);
            xf.line(line);
        }
        ctx.finish(xf);

        TextFile sf(ctx.file("_spread.csv"), ctx.header({"max_accel belongs to the interval ending at t"}));
        sf.line("t,spread,max_accel");
        for (std::size_t k = 0; k < nt; ++k)
            sf.row(s.times[k], s.spread[k], k == 0 ? std::numeric_limits<double>::quiet_NaN() : s.max_accel[k - 1]);
        ctx.finish(sf);
    }
}

inline void wigner(const WignerRun& run, const Context& ctx) {
    const auto& p = run.scenario.params;
    const unsigned n = std::get<HOStationary>(run.scenario.kind).n;
    const auto rho = density_from_pure(discretize_state(run.scenario, run.grid, 0.0), run.grid);
    const MomentumAxis axis = run.axis ? *run.axis : default_momentum_axis(rho, p.hbar);
    const auto w = wigner_transform(rho, axis, p.hbar);
    const auto field = wigner_energy_field(w, p.mass, p.omega, p.hbar, run.mask_fraction);
    const double expected = (n + 0.5) * p.hbar * p.omega;

    if (ctx.opt.write_files) {
        TextFile f(ctx.file("_wigner.csv"), ctx.header({"scenario " + run.scenario.name()}));
        f.line("x,p,W");
        for (std::size_t i = 0; i < run.grid.size(); ++i)
            for (std::size_t j = 0; j < axis.size(); ++j)
                f.row(run.grid.x(i), axis.p(j), w.values(Eigen::Index(i), Eigen::Index(j)));
        ctx.finish(f);
    }

    Report& rep = ctx.result.report;
    rep.add("scenario", run.scenario.name());
    rep.add("grid_points", run.grid.size());
    rep.add("dx", run.grid.dx());
    rep.add("p_points", axis.size());
    rep.add("dp", axis.dp);
    rep.add("normalization", w.normalization());
    rep.add("W00", w.at(0.0, 0.0));
    rep.add("max_imag_residue", w.max_imag_residue);
    rep.add("mean_momentum", mean_momentum(w));
    rep.add("momentum_variance", momentum_variance(w));
    rep.add("energy_expected", expected);
    rep.add("energy_mean", field.mean);
    rep.add("energy_std", field.stddev);
    rep.add("energy_std_rel", field.stddev / field.mean);
    rep.add("kept_entries", field.kept);
    rep.add("mask_fraction", run.mask_fraction);
    ctx.write_report("_report.csv");

    if (ctx.opt.plot_data && ctx.opt.write_files) {
        TextFile f(ctx.file("_energy.csv"), ctx.header({"unmasked entries of the energy field"}));
        f.line("x,p,E");
        for (Eigen::Index i = 0; i < field.values.rows(); ++i)
            for (Eigen::Index j = 0; j < field.values.cols(); ++j)
                if (field.mask(i, j)) f.row(run.grid.x(std::size_t(i)), axis.p(std::size_t(j)), field.values(i, j));
        ctx.finish(f);
    }
}

inline void master(const MasterRun& run, const Context& ctx) {
    const auto rho0 = density_from_pure(discretize_state(run.state, run.grid, 0.0), run.grid);
    const auto snaps = evolve_master(rho0, run.params, run.steps, run.snapshot_stride);
    const double rate = coherence_decay_rate(snaps, run.probe_a, run.probe_b);
    const double sep = std::abs(run.grid.x(run.grid.nearest(run.probe_a)) - run.grid.x(run.grid.nearest(run.probe_b)));
    const double predicted = run.params.D * sep * sep / (run.params.hbar * run.params.hbar);

    auto p2 = [&](const DensityMatrixGrid& r) {
        const auto wts = spectral::momentum_weights(r);
        double acc = 0.0;
        for (std::size_t j = 0; j < wts.size(); ++j) {
            const double p = run.params.hbar * r.grid.wavenumber(j);
            acc += wts[j] * p * p;
        }
        return acc;
    };

    const auto ia = Eigen::Index(run.grid.nearest(run.probe_a));
    const auto ib = Eigen::Index(run.grid.nearest(run.probe_b));
    double trace_drift = 0.0, herm = 0.0, diag_change = 0.0;
    for (const auto& s : snaps.states) {
        trace_drift = std::max(trace_drift, std::abs(s.trace() - rho0.trace()));
        herm = std::max(herm, s.hermiticity_defect());
        diag_change = std::max(diag_change, (s.values.diagonal() - rho0.values.diagonal()).cwiseAbs().maxCoeff());
    }

    if (ctx.opt.write_files) {
        TextFile f(ctx.file("_series.csv"), ctx.header({"probe x_a=" + fmt(run.probe_a) + " x_b=" + fmt(run.probe_b)}));
        f.line("t,trace,hermiticity_defect,purity,coherence_abs,p2");
        for (std::size_t k = 0; k < snaps.states.size(); ++k) {
            const auto& s = snaps.states[k];
            f.row(snaps.times[k], s.trace(), s.hermiticity_defect(), s.purity(), std::abs(s.values(ia, ib)), p2(s));
        }
        ctx.finish(f);

        const std::size_t ns = snaps.states.size();
        const std::size_t want = std::min(run.matrix_snapshots, ns);
        std::vector<std::size_t> picks;
        for (std::size_t q = 0; q < want; ++q) {
            const std::size_t k = want == 1 ? ns - 1 : (q * (ns - 1)) / (want - 1);
            if (picks.empty() || picks.back() != k) picks.push_back(k);
        }
        for (std::size_t k : picks) {
            TextFile m(ctx.file("_rho_" + std::to_string(k) + ".csv"),
                       ctx.header({"snapshot " + std::to_string(k) + " t=" + fmt(snaps.times[k])}));
            m.line("i,j,re,im");
            const auto& v = snaps.states[k].values;
            for (Eigen::Index i = 0; i < v.rows(); ++i)
                for (Eigen::Index j = 0; j < v.cols(); ++j)
                    m.row(std::size_t(i), std::size_t(j), v(i, j).real(), v(i, j).imag());
            ctx.finish(m);
        }
    }

    const double t_end = snaps.times.back();
    Report& rep = ctx.result.report;
    rep.add("snapshots", snaps.states.size());
    rep.add("t_final", t_end);
    rep.add("probe_separation", sep);
    rep.add("fitted_rate", rate);
    rep.add("predicted_rate", predicted);
    rep.add("rate_ratio", predicted > 0.0 ? fmt(rate / predicted) : std::string("undefined"));
    rep.add("tau_D", predicted > 0.0 ? fmt(1.0 / predicted) : std::string("inf"));
    rep.add("trace_max_drift", trace_drift);
    rep.add("hermiticity_max_defect", herm);
    rep.add("diagonal_max_change", diag_change);
    rep.add("purity_final", snaps.states.back().purity());
    const double p2_rate = (p2(snaps.states.back()) - p2(rho0)) / t_end;
    rep.add("p2_rate", p2_rate);
    rep.add("p2_rate_expected", 2.0 * run.params.D);
    ctx.write_report("_report.csv");
}

inline void tau(const TauRun& run, const Context& ctx, std::ostream& out) {
    BathParams bath{1.0 / run.relaxation_time, run.temperature, run.mass, run.separation};
    const double lambda_t = thermal_wavelength(bath);
    const double ratio = lambda_t / run.separation;
    const double tau_d = run.relaxation_time * ratio * ratio;
    out << "lambda_T = hbar / sqrt(2 m k_B T) = " << fmt(lambda_t) << " m\n"
        << "tau_R = 1 / gamma = " << fmt(run.relaxation_time) << " s\n"
        << "tau_D = tau_R (lambda_T / dx)^2 = " << fmt(tau_d) << " s\n";

    Report& rep = ctx.result.report;
    rep.add("mass_kg", run.mass);
    rep.add("temperature_K", run.temperature);
    rep.add("separation_m", run.separation);
    rep.add("lambda_T_m", lambda_t);
    rep.add("tau_R_s", run.relaxation_time);
    rep.add("tau_D_s", tau_d);
    rep.add("D_SI", momentum_diffusion(bath));
    ctx.write_report("_tau.csv");
}

}  // namespace detail

/// Runs every entry of the set in order. Numerical failures propagate as the library's exceptions.
inline std::vector<RunResult> execute(const RunSet& set, const ExecOptions& opt, std::ostream& out) {
    std::vector<RunResult> results;
    results.reserve(set.runs.size());
    for (std::size_t i = 0; i < set.runs.size(); ++i) {
        RunResult& res = results.emplace_back();
        res.name = std::visit([](const auto& r) { return r.name; }, set.runs[i]);
        const detail::Context ctx{set, i, opt, res};
        std::visit(mesodyn::detail::overloaded{
                       [&](const SimulateRun& r) { detail::simulate(r, ctx); },
                       [&](const WignerRun& r) { detail::wigner(r, ctx); },
                       [&](const MasterRun& r) { detail::master(r, ctx); },
                       [&](const TauRun& r) { detail::tau(r, ctx, out); },
                   },
                   set.runs[i]);
    }
    return results;
}

}  // namespace mesodyn::harness
