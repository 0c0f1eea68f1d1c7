#pragma once

// Trajectories of the modified equation of motion
//     m x'' = -d/dx [ V(x) + (1 - lambda(t)) Q(x,t) ]
// with Q frozen at its lambda = 0 closed form, plus ensemble diagnostics.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <variant>
#include <vector>

#include "mesodyn/coupling.hpp"
#include "mesodyn/errors.hpp"
#include "mesodyn/scenario.hpp"

namespace mesodyn {

enum class IntegrationMethod { RK4 };

struct IntegratorConfig {
    double dt{1e-3};
    double t0{0.0};
    double t1{1.0};
    std::size_t output_stride{1};
    IntegrationMethod method{IntegrationMethod::RK4};

    void validate() const {
        if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
        if (!(t1 > t0)) throw ConfigError("t1 must exceed t0");
        if (output_stride < 1) throw ConfigError("output_stride must be at least 1");
    }

    /// Number of fixed steps; time t_k = t0 + k dt.
    std::size_t steps() const { return std::max<std::size_t>(1, std::size_t(std::llround((t1 - t0) / dt))); }
};

/// Step defaults: one two-thousandth of a period for oscillators, of m sigma0^2 / hbar for free packets.
inline IntegratorConfig default_integrator(const Scenario& scn, double t0, double t1, std::size_t stride = 1) {
    const auto& p = scn.params;
    const double scale = scn.is_oscillator() ? 2.0 * std::numbers::pi / p.omega
                                             : p.sigma0 * p.sigma0 * p.mass / p.hbar;
    return IntegratorConfig{scale / 2000.0, t0, t1, stride, IntegrationMethod::RK4};
}

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<double> positions;
    std::vector<double> velocities;
    std::vector<double> lambdas;
    std::vector<double> energies;

    std::size_t size() const { return times.size(); }
};

struct QuantileSampling {};
struct ExplicitPositions {
    std::vector<double> positions;
};
using Sampling = std::variant<QuantileSampling, ExplicitPositions>;

struct EnsembleSpec {
    std::size_t n_members{7};
    Sampling sampling{QuantileSampling{}};
    CouplingLaw coupling{PureQuantum{}};
    IntegratorConfig integrator{};
};

/// lambda(t), held at lambda(0) for t < 0 so runs may start before the environment switches on.
inline double coupling_at(const CouplingLaw& law, double t) { return lambda_at(law, std::max(t, 0.0)); }

inline double total_force(const Scenario& scn, const CouplingLaw& law, double x, double t) {
    return classical_force(scn, x) + (1.0 - coupling_at(law, t)) * quantum_force(scn, x, t);
}

/// E = m v^2 / 2 + V(x) + (1 - lambda(t)) Q(x,t).
inline double bohm_energy(const Scenario& scn, const CouplingLaw& law, double x, double v, double t) {
    return 0.5 * scn.params.mass * v * v + potential_energy(scn, x) +
           (1.0 - coupling_at(law, t)) * quantum_potential(scn, x, t);
}

namespace detail {

inline void push_sample(TrajectoryRecord& rec, const Scenario& scn, const CouplingLaw& law, double t, double x,
                        double v) {
    rec.times.push_back(t);
    rec.positions.push_back(x);
    rec.velocities.push_back(v);
    rec.lambdas.push_back(coupling_at(law, t));
    rec.energies.push_back(bohm_energy(scn, law, x, v, t));
}

inline void reserve(TrajectoryRecord& rec, std::size_t n) {
    rec.times.reserve(n);
    rec.positions.reserve(n);
    rec.velocities.reserve(n);
    rec.lambdas.reserve(n);
    rec.energies.reserve(n);
}

}  // namespace detail

/// Classic RK4 on (x' = v, v' = F/m), sampled every output_stride steps including t0.
inline TrajectoryRecord integrate_trajectory(const Scenario& scn, const CouplingLaw& law, double x0, double v0,
                                             const IntegratorConfig& cfg) {
    cfg.validate();
    const double inv_m = 1.0 / scn.params.mass;
    const double h = cfg.dt;
    const std::size_t n = cfg.steps();

    TrajectoryRecord rec;
    detail::reserve(rec, n / cfg.output_stride + 1);
    double x = x0;
    double v = v0;
    detail::push_sample(rec, scn, law, cfg.t0, x, v);

    auto accel = [&](double xx, double tt) { return inv_m * total_force(scn, law, xx, tt); };
    for (std::size_t k = 0; k < n; ++k) {
        const double t = cfg.t0 + double(k) * h;
        const double k1x = v;
        const double k1v = accel(x, t);
        const double k2x = v + 0.5 * h * k1v;
        const double k2v = accel(x + 0.5 * h * k1x, t + 0.5 * h);
        const double k3x = v + 0.5 * h * k2v;
        const double k3v = accel(x + 0.5 * h * k2x, t + 0.5 * h);
        const double k4x = v + h * k3v;
        const double k4v = accel(x + h * k3x, t + h);
        const double xn = x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        const double vn = v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if (!std::isfinite(xn) || !std::isfinite(vn))
            throw IntegrationError("non-finite state in integrate_trajectory", t);
        x = xn;
        v = vn;
        if ((k + 1) % cfg.output_stride == 0) detail::push_sample(rec, scn, law, cfg.t0 + double(k + 1) * h, x, v);
    }
    return rec;
}

/// RK4 on the first-order guidance law dx/dt = (1/m) dS/dx; the lambda = 0 reference dynamics.
inline TrajectoryRecord integrate_guidance(const Scenario& scn, double x0, const IntegratorConfig& cfg) {
    cfg.validate();
    const CouplingLaw law = PureQuantum{};
    const double h = cfg.dt;
    const std::size_t n = cfg.steps();

    TrajectoryRecord rec;
    detail::reserve(rec, n / cfg.output_stride + 1);
    double x = x0;
    detail::push_sample(rec, scn, law, cfg.t0, x, guidance_velocity(scn, x, cfg.t0));
    for (std::size_t k = 0; k < n; ++k) {
        const double t = cfg.t0 + double(k) * h;
        const double k1 = guidance_velocity(scn, x, t);
        const double k2 = guidance_velocity(scn, x + 0.5 * h * k1, t + 0.5 * h);
        const double k3 = guidance_velocity(scn, x + 0.5 * h * k2, t + 0.5 * h);
        const double k4 = guidance_velocity(scn, x + h * k3, t + h);
        const double xn = x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(xn)) throw IntegrationError("non-finite state in integrate_guidance", t);
        x = xn;
        if ((k + 1) % cfg.output_stride == 0) {
            const double tn = cfg.t0 + double(k + 1) * h;
            detail::push_sample(rec, scn, law, tn, x, guidance_velocity(scn, x, tn));
        }
    }
    return rec;
}

/// Initial positions: quantiles q_i = (i + 1/2)/n of R^2 at t0, or the explicit list.
inline std::vector<double> initial_positions(const Scenario& scn, const EnsembleSpec& spec) {
    if (const auto* list = std::get_if<ExplicitPositions>(&spec.sampling)) return list->positions;
    if (spec.n_members < 1) throw ConfigError("ensemble needs at least one member");
    std::vector<double> xs(spec.n_members);
    for (std::size_t i = 0; i < spec.n_members; ++i)
        xs[i] = density_quantile(scn, (double(i) + 0.5) / double(spec.n_members), spec.integrator.t0);
    return xs;
}

/// One record per member, each started on the guidance condition at t0.
inline std::vector<TrajectoryRecord> run_ensemble(const Scenario& scn, const EnsembleSpec& spec) {
    scn.validate();
    validate(spec.coupling);
    spec.integrator.validate();
    const auto xs = initial_positions(scn, spec);
    std::vector<TrajectoryRecord> out;
    out.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        try {
            const double v0 = guidance_velocity(scn, xs[i], spec.integrator.t0);
            out.push_back(integrate_trajectory(scn, spec.coupling, xs[i], v0, spec.integrator));
        } catch (const IntegrationError& e) {
            throw EnsembleError(i, e);
        }
    }
    return out;
}

struct Crossing {
    std::size_t member_i;
    std::size_t member_j;
    double t_before;
    double t_after;
};

namespace detail {

inline void require_common_grid(std::span<const TrajectoryRecord> records) {
    for (const auto& r : records)
        if (r.times != records.front().times) throw UsageError("records do not share a common time grid");
}

}  // namespace detail

/// Every pair (i < j) whose position difference changes sign between adjacent samples.
inline std::vector<Crossing> detect_crossings(std::span<const TrajectoryRecord> records) {
    std::vector<Crossing> out;
    if (records.size() < 2) return out;
    detail::require_common_grid(records);
    const auto& times = records.front().times;
    for (std::size_t i = 0; i < records.size(); ++i) {
        for (std::size_t j = i + 1; j < records.size(); ++j) {
            const auto& a = records[i].positions;
            const auto& b = records[j].positions;
            for (std::size_t k = 0; k + 1 < times.size(); ++k) {
                const double d0 = a[k] - b[k];
                const double d1 = a[k + 1] - b[k + 1];
                if ((d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0) || (d0 != 0.0 && d1 == 0.0))
                    out.push_back({i, j, times[k], times[k + 1]});
            }
        }
    }
    return out;
}

/// Ensemble spread per sample and max |dv/dt| over members per sampling interval.
struct SpreadingSeries {
    std::vector<double> times;
    std::vector<double> spread;     // sample standard deviation of positions, one per time
    std::vector<double> max_accel;  // interval k -> [times[k], times[k+1]], size = times.size() - 1
};

inline SpreadingSeries spreading_metrics(std::span<const TrajectoryRecord> records) {
    SpreadingSeries s;
    if (records.empty()) return s;
    detail::require_common_grid(records);
    s.times = records.front().times;
    const std::size_t nt = s.times.size();
    const double m = double(records.size());
    s.spread.resize(nt);
    for (std::size_t k = 0; k < nt; ++k) {
        double mean = 0.0;
        for (const auto& r : records) mean += r.positions[k];
        mean /= m;
        double ss = 0.0;
        for (const auto& r : records) ss += (r.positions[k] - mean) * (r.positions[k] - mean);
        s.spread[k] = records.size() > 1 ? std::sqrt(ss / (m - 1.0)) : 0.0;
    }
    s.max_accel.resize(nt > 0 ? nt - 1 : 0);
    for (std::size_t k = 0; k + 1 < nt; ++k) {
        const double dt = s.times[k + 1] - s.times[k];
        double mx = 0.0;
        for (const auto& r : records) mx = std::max(mx, std::abs(r.velocities[k + 1] - r.velocities[k]) / dt);
        s.max_accel[k] = mx;
    }
    return s;
}

}  // namespace mesodyn
