// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "mesodyn/mesodyn.hpp"
#include "mesodyn/harness/presets.hpp"

namespace fs = std::filesystem;
using namespace mesodyn;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Verdict {
    bool pass;
    std::string detail;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<TrajectoryRecord> preset_ensemble(const std::string& preset, std::size_t run) {
    const auto set = harness::load_preset(preset, harness::Command::Simulate);
    const auto& r = std::get<harness::SimulateRun>(set.runs.at(run));
    return run_ensemble(r.scenario, r.ensemble);
}

Verdict stationary_rest() {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (unsigned n : {0u, 1u, 2u}) {
        const auto s = Scenario::stationary(n);
        EnsembleSpec spec;
        spec.n_members = 7;
        spec.integrator = default_integrator(s, 0.0, 10.0 * kTwoPi);
        for (const auto& rec : run_ensemble(s, spec))
            for (double x : rec.positions) worst = std::max(worst, std::abs(x - rec.positions.front()));
    }
    const double elapsed = seconds_since(start);
    return {worst < 1e-9 && elapsed < 1.0, "max|x(t)-x(0)| = " + num(worst) + ", runtime " + num(elapsed) + " s"};
}

double classical_error(double a, double dt, double* energy_drift = nullptr) {
    PhysParams p;
    p.amplitude_a = a;
    const auto s = Scenario::coherent(p);
    const auto rec = integrate_trajectory(s, PureClassical{}, a, 0.0, IntegratorConfig{dt, 0.0, 10.0 * kTwoPi, 1});
    double err = 0.0, drift = 0.0;
    const double e0 = 0.5 * a * a;
    for (std::size_t k = 0; k < rec.size(); ++k) {
        err = std::max(err, std::abs(rec.positions[k] - a * std::cos(rec.times[k])));
        drift = std::max(drift, std::abs(rec.energies[k] - e0) / e0);
    }
    if (energy_drift) *energy_drift = drift;
    return err;
}

Verdict classical_limit() {
    double drift = 0.0;
    const double err = classical_error(3.0, kTwoPi / 2000.0, &drift);
    return {err < 1e-6 && drift < 1e-8, "max|x - a cos t| = " + num(err) + ", energy drift " + num(drift)};
}

Verdict guidance_equivalence() {
    PhysParams p;
    p.amplitude_a = 3.0;
    double worst = 0.0;
    for (const auto& s : {Scenario::stationary(0), Scenario::stationary(1), Scenario::stationary(2), Scenario::coherent(p),
                          Scenario::free_gaussian()}) {
        const double t1 = s.is_oscillator() ? 10.0 * kTwoPi : 10.0;
        EnsembleSpec spec;
        spec.integrator = default_integrator(s, 0.0, t1, 10);
        const auto second = run_ensemble(s, spec);
        const auto starts = initial_positions(s, spec);
        for (std::size_t i = 0; i < starts.size(); ++i) {
            const auto first = integrate_guidance(s, starts[i], spec.integrator);
            for (std::size_t k = 0; k < first.size(); ++k)
                worst = std::max(worst, std::abs(first.positions[k] - second[i].positions[k]));
        }
    }
    return {worst < 1e-5, "max pointwise |x_2nd - x_guidance| = " + num(worst)};
}

Verdict spreading_and_arrest() {
    const auto quantum = preset_ensemble("fig3", 0);
    const auto set = harness::load_preset("fig3", harness::Command::Simulate);
    const auto& params = std::get<harness::SimulateRun>(set.runs[0]).scenario.params;
    double width_err = 0.0;
    for (const auto& rec : quantum) {
        const double x0 = rec.positions.front();
        for (std::size_t k = 0; k < rec.size(); ++k)
            width_err = std::max(width_err, std::abs(rec.positions[k] - x0 * free_packet_width(params, rec.times[k]) /
                                                                            params.sigma0));
    }

    const auto arrested = spreading_metrics(preset_ensemble("fig3", 3));
    const double accel_ratio = arrested.max_accel.back() / arrested.max_accel.front();
    const double t_quarter = arrested.times.front() + 0.75 * (arrested.times.back() - arrested.times.front());
    double lo = INFINITY, hi = 0.0;
    for (std::size_t k = 0; k < arrested.times.size(); ++k)
        if (arrested.times[k] >= t_quarter) {
            lo = std::min(lo, arrested.spread[k]);
            hi = std::max(hi, arrested.spread[k]);
        }
    const double spread_change = (hi - lo) / lo;
    return {width_err < 1e-5 && accel_ratio < 1e-4 && spread_change < 5e-3,
            "sigma0 = " + num(params.sigma0) + ": width-law error " + num(width_err) + ", late/initial accel " +
                num(accel_ratio) + ", final-quarter spread change " + num(spread_change)};
}

Verdict crossing_dichotomy() {
    const auto quantum = detect_crossings(preset_ensemble("fig2", 0));
    const auto decohered = detect_crossings(preset_ensemble("fig2", 3));
    return {quantum.empty() && !decohered.empty(),
            "crossings b=0: " + std::to_string(quantum.size()) + ", b=5: " + std::to_string(decohered.size())};
}

Verdict energy_residue() {
    const auto start = std::chrono::steady_clock::now();
    PhysParams p;
    p.mass = 1.5;
    p.sigma0 = 1.3;
    p.drift_u = 0.7;
    const SpatialGrid wide{-24.0, 24.0, 512};
    const auto psi = discretize_state(Scenario::free_gaussian(p), wide, 0.0);
    const double expected = p.hbar * p.hbar / (8.0 * p.mass * p.sigma0 * p.sigma0) + 0.5 * p.mass * p.drift_u * p.drift_u;
    const double free_err = std::abs(mean_energy(psi, wide, p.mass, FreePotential{}, p.hbar) - expected);

    bool ok = free_err < 1e-6;
    std::string detail = "free <H> error " + num(free_err);
    const SpatialGrid grid{-8.0, 8.0, 256};
    for (unsigned n : {1u, 2u}) {
        const auto rho = density_from_pure(discretize_state(Scenario::stationary(n), grid, 0.0), grid);
        const auto field = wigner_energy_field(wigner_transform(rho), 1.0, 1.0, 1.0);
        const double target = n + 0.5;
        const double mean_err = std::abs(field.mean - target);
        const double rel_std = field.stddev / field.mean;
        ok = ok && mean_err < 1e-3 && rel_std < 1e-2;
        detail += "; n=" + std::to_string(n) + " mean error " + num(mean_err) + ", std/mean " + num(rel_std);
    }
    const double elapsed = seconds_since(start);
    return {ok && elapsed < 30.0, detail + ", runtime " + num(elapsed) + " s"};
}

// <p^2> from a direct discrete Fourier sum w_k = u_k^H rho u_k, independent of the library's spectral route.
double p2_direct(const DensityMatrixGrid& rho) {
    const auto n = rho.values.rows();
    const double dx = rho.grid.dx();
    const double dk = kTwoPi / (double(n) * dx);
    Eigen::MatrixXcd u(n, n);
    std::vector<double> k(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) {
        k[std::size_t(j)] = dk * double(j < n / 2 ? j : j - n);
        for (Eigen::Index i = 0; i < n; ++i) u(i, j) = std::polar(1.0, k[std::size_t(j)] * double(i) * dx);
    }
    const Eigen::VectorXd w = (u.adjoint() * rho.values * u).diagonal().real();
    double acc = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) acc += w[j] * k[std::size_t(j)] * k[std::size_t(j)];
    return acc / w.sum();
}

double slope(const std::vector<double>& t, const std::vector<double>& y) {
    const double n = double(t.size());
    double tm = 0.0, ym = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        tm += t[k] / n;
        ym += y[k] / n;
    }
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        sxy += (t[k] - tm) * (y[k] - ym);
        sxx += (t[k] - tm) * (t[k] - tm);
    }
    return sxy / sxx;
}

Verdict decoherence_rate() {
    const double x1 = -4.0, x2 = 4.0, D = 1e-3;
    const SpatialGrid grid{-32.0, 32.0, 256};
    const auto rho0 = density_from_pure(discretize_state(GaussianPair{x1, x2, PhysParams{}}, grid, 0.0), grid);
    MasterEqParams mp;
    mp.mode = MasterMode::DecoherenceOnly;
    mp.D = D;
    mp.dt = 0.1;
    const auto snaps = evolve_master(rho0, mp, 200, 10);

    const double predicted = D * (x1 - x2) * (x1 - x2);
    const double rate_err = std::abs(coherence_decay_rate(snaps, x1, x2) / predicted - 1.0);
    double diag_change = 0.0, trace_drift = 0.0;
    std::vector<double> p2;
    for (const auto& s : snaps.states) {
        diag_change = std::max(diag_change, (s.values.diagonal() - rho0.values.diagonal()).cwiseAbs().maxCoeff());
        trace_drift = std::max(trace_drift, std::abs(s.values.diagonal().real().sum() * grid.dx() - 1.0));
        p2.push_back(p2_direct(s));
    }
    const double p2_err = std::abs(slope(snaps.times, p2) / (2.0 * D) - 1.0);
    return {rate_err < 0.02 && diag_change == 0.0 && trace_drift < 1e-8 && p2_err < 0.03,
            "rate error " + num(rate_err) + ", diagonal change " + num(diag_change) + ", trace drift " +
                num(trace_drift) + ", d<p^2>/dt error " + num(p2_err)};
}

Verdict decoherence_time_scale() {
    const double tau = decoherence_time(BathParams{1e-17, 300.0, 1e-3, 1e-2});
    return {tau >= 1e-25 && tau <= 1e-22, "tau_D = " + num(tau) + " s"};
}

Verdict integrator_order() {
    const double coarse = kTwoPi / 100.0;
    const double ratio = classical_error(3.0, coarse) / classical_error(3.0, coarse / 2.0);
    return {ratio >= 12.0 && ratio <= 20.0, "error ratio under dt halving = " + num(ratio)};
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(MESODYN_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::map<std::string, std::string> tree_contents(const fs::path& root) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (!e.is_regular_file()) continue;
        std::ifstream in(e.path(), std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        out[fs::relative(e.path(), root).string()] = ss.str();
    }
    return out;
}

Verdict determinism() {
    const fs::path root = fs::temp_directory_path() / ("mesodyn_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);
    bool ok = true;
    std::size_t files = 0;
    std::string detail;
    for (const auto& preset : harness::preset_catalog()) {
        const std::string cmd = harness::command_name(preset.command);
        std::map<std::string, std::string> runs[2];
        for (int k = 0; k < 2; ++k) {
            const fs::path dir = root / preset.name / std::to_string(k);
            const int code = run_cli(cmd + " --preset " + preset.name + " --plot-data --out " + dir.string());
            if (code != 0) {
                ok = false;
                detail += preset.name + " exited " + std::to_string(code) + "; ";
                continue;
            }
            runs[k] = tree_contents(dir);
        }
        if (runs[0].empty() || runs[0] != runs[1]) {
            ok = false;
            detail += preset.name + " differs; ";
        }
        files += runs[0].size();
    }
    fs::remove_all(root);
    return {ok, detail + std::to_string(harness::preset_catalog().size()) + " presets, " + std::to_string(files) +
                    " files compared byte for byte"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"stationary-state rest", stationary_rest},
        {"classical limit", classical_limit},
        {"lambda=0 guidance equivalence", guidance_equivalence},
        {"free-packet spreading and arrest", spreading_and_arrest},
        {"crossing dichotomy", crossing_dichotomy},
        {"quantum energy residue", energy_residue},
        {"decoherence rate", decoherence_rate},
        {"decoherence time magnitude", decoherence_time_scale},
        {"integrator order", integrator_order},
        {"determinism", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        if (!v.pass) ++failures;
        std::cout << "criterion " << i + 1 << ": " << (v.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ("
                  << v.detail << ")" << std::endl;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criterion(s) failed") << '\n';
    return failures == 0 ? 0 : 1;
}
