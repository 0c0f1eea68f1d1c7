#pragma once

// Closed-form wave fields for the three model systems: oscillator eigenstates,
// the oscillator coherent packet and the free spreading Gaussian.
//
// Every field is written as psi = R exp(iS/hbar). The quantum potential
// Q = -(hbar^2 / 2m) R''/R is given in closed polynomial form so that it stays
// finite at the nodes of the excited eigenstates.

#include <cmath>
#include <numbers>
#include <string>
#include <variant>

#include "mesodyn/errors.hpp"
#include "mesodyn/special.hpp"

namespace mesodyn {

/// Physical parameters in natural units (hbar = m = omega = 1 by default).
struct PhysParams {
    double hbar{1.0};
    double mass{1.0};
    double omega{1.0};        // oscillator scenarios
    double amplitude_a{1.0};  // coherent packet
    double sigma0{1.0};       // free packet width at t = 0
    double drift_u{0.0};      // free packet group velocity
};

struct HOStationary {
    unsigned n{0};
};
struct HOCoherent {};
struct FreeGaussian {};

using ScenarioKind = std::variant<HOStationary, HOCoherent, FreeGaussian>;

struct Scenario {
    ScenarioKind kind{HOStationary{}};
    PhysParams params{};

    static Scenario stationary(unsigned n, PhysParams p = {}) { return {HOStationary{n}, p}; }
    static Scenario coherent(PhysParams p = {}) { return {HOCoherent{}, p}; }
    static Scenario free_gaussian(PhysParams p = {}) { return {FreeGaussian{}, p}; }

    bool is_oscillator() const { return !std::holds_alternative<FreeGaussian>(kind); }

    /// Throws ConfigError when a parameter used by this variant is out of range.
    void validate() const {
        const auto& p = params;
        if (!(p.hbar > 0.0) || !(p.mass > 0.0)) throw ConfigError("hbar and mass must be positive");
        if (is_oscillator() && !(p.omega > 0.0)) throw ConfigError("omega must be positive");
        if (!is_oscillator() && !(p.sigma0 > 0.0)) throw ConfigError("sigma0 must be positive");
        if (!std::isfinite(p.amplitude_a) || !std::isfinite(p.drift_u))
            throw ConfigError("amplitude and drift must be finite");
    }

    std::string name() const {
        return std::visit(
            [](const auto& k) -> std::string {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, HOStationary>) return "ho_stationary(n=" + std::to_string(k.n) + ")";
                else if constexpr (std::is_same_v<K, HOCoherent>) return "ho_coherent";
                else return "free_gaussian";
            },
            kind);
    }
};

namespace detail {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline double oscillator_length(const PhysParams& p) { return std::sqrt(p.hbar / (p.mass * p.omega)); }

/// sigma(t)^2 = sigma0^2 (1 + hbar^2 t^2 / (4 m^2 sigma0^4)).
inline double free_width_sq(const PhysParams& p, double t) {
    const double s2 = p.sigma0 * p.sigma0;
    const double r = p.hbar * t / (2.0 * p.mass * s2);
    return s2 * (1.0 + r * r);
}

inline double stationary_energy(const PhysParams& p, unsigned n) { return (n + 0.5) * p.hbar * p.omega; }

}  // namespace detail

/// Width of the free packet at time t.
inline double free_packet_width(const PhysParams& p, double t) { return std::sqrt(detail::free_width_sq(p, t)); }

/// Center of the position density at time t.
inline double packet_center(const Scenario& scn, double t) {
    const auto& p = scn.params;
    return std::visit(detail::overloaded{
                          [](HOStationary) { return 0.0; },
                          [&](HOCoherent) { return p.amplitude_a * std::cos(p.omega * t); },
                          [&](FreeGaussian) { return p.drift_u * t; },
                      },
                      scn.kind);
}

/// Amplitude R(x,t). Signed for excited eigenstates; use R^2 for densities.
inline double wave_amplitude(const Scenario& scn, double x, double t) {
    const auto& p = scn.params;
    return std::visit(
        detail::overloaded{
            [&](HOStationary s) {
                const double l = detail::oscillator_length(p);
                return special::hermite_function(s.n, x / l) / std::sqrt(l);
            },
            [&](HOCoherent) {
                const double d = x - p.amplitude_a * std::cos(p.omega * t);
                const double k = p.mass * p.omega / p.hbar;
                return std::pow(k / std::numbers::pi, 0.25) * std::exp(-0.5 * k * d * d);
            },
            [&](FreeGaussian) {
                const double s2 = detail::free_width_sq(p, t);
                const double d = x - p.drift_u * t;
                return std::pow(2.0 * std::numbers::pi * s2, -0.25) * std::exp(-d * d / (4.0 * s2));
            },
        },
        scn.kind);
}

/// Phase S(x,t). The free packet uses the dispersive phase whose spreading term is linear in t.
inline double wave_phase(const Scenario& scn, double x, double t) {
    const auto& p = scn.params;
    return std::visit(
        detail::overloaded{
            [&](HOStationary s) { return -detail::stationary_energy(p, s.n) * t; },
            [&](HOCoherent) {
                const double w = p.omega;
                const double a = p.amplitude_a;
                return -0.5 * p.hbar * w * t + 0.25 * p.mass * w * a * a * std::sin(2.0 * w * t) -
                       p.mass * w * x * a * std::sin(w * t);
            },
            [&](FreeGaussian) {
                const double s0sq = p.sigma0 * p.sigma0;
                const double s2 = detail::free_width_sq(p, t);
                const double d = x - p.drift_u * t;
                return -0.5 * p.hbar * std::atan(p.hbar * t / (2.0 * p.mass * s0sq)) +
                       p.mass * p.drift_u * (x - 0.5 * p.drift_u * t) +
                       d * d * p.hbar * p.hbar * t / (8.0 * p.mass * s0sq * s2);
            },
        },
        scn.kind);
}

/// Quantum potential Q(x,t) in closed form.
inline double quantum_potential(const Scenario& scn, double x, double t) {
    const auto& p = scn.params;
    return std::visit(
        detail::overloaded{
            [&](HOStationary s) {
                return detail::stationary_energy(p, s.n) - 0.5 * p.mass * p.omega * p.omega * x * x;
            },
            [&](HOCoherent) {
                const double d = x - p.amplitude_a * std::cos(p.omega * t);
                return -0.5 * p.mass * p.omega * p.omega * d * d + 0.5 * p.hbar * p.omega;
            },
            [&](FreeGaussian) {
                const double s2 = detail::free_width_sq(p, t);
                const double d = x - p.drift_u * t;
                return p.hbar * p.hbar / (4.0 * p.mass * s2) * (1.0 - d * d / (2.0 * s2));
            },
        },
        scn.kind);
}

/// -dQ/dx, analytic.
inline double quantum_force(const Scenario& scn, double x, double t) {
    const auto& p = scn.params;
    return std::visit(
        detail::overloaded{
            [&](HOStationary) { return p.mass * p.omega * p.omega * x; },
            [&](HOCoherent) {
                return p.mass * p.omega * p.omega * (x - p.amplitude_a * std::cos(p.omega * t));
            },
            [&](FreeGaussian) {
                const double s2 = detail::free_width_sq(p, t);
                return p.hbar * p.hbar * (x - p.drift_u * t) / (4.0 * p.mass * s2 * s2);
            },
        },
        scn.kind);
}

/// External potential V(x).
inline double potential_energy(const Scenario& scn, double x) {
    if (!scn.is_oscillator()) return 0.0;
    const auto& p = scn.params;
    return 0.5 * p.mass * p.omega * p.omega * x * x;
}

/// -dV/dx.
inline double classical_force(const Scenario& scn, double x) {
    if (!scn.is_oscillator()) return 0.0;
    const auto& p = scn.params;
    return -p.mass * p.omega * p.omega * x;
}

/// (1/m) dS/dx, analytic.
inline double guidance_velocity(const Scenario& scn, double x, double t) {
    const auto& p = scn.params;
    return std::visit(
        detail::overloaded{
            [](HOStationary) { return 0.0; },
            [&](HOCoherent) { return -p.omega * p.amplitude_a * std::sin(p.omega * t); },
            [&](FreeGaussian) {
                const double s0sq = p.sigma0 * p.sigma0;
                const double s2 = detail::free_width_sq(p, t);
                return p.drift_u +
                       (x - p.drift_u * t) * p.hbar * p.hbar * t / (4.0 * p.mass * p.mass * s0sq * s2);
            },
        },
        scn.kind);
}

/// Position x with int_{-inf}^{x} R^2 = q.
inline double density_quantile(const Scenario& scn, double q, double t) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("density_quantile: q must lie in (0, 1)");
    const auto& p = scn.params;
    const double center = packet_center(scn, t);
    return std::visit(
        detail::overloaded{
            [&](HOStationary s) {
                const double l = detail::oscillator_length(p);
                return center + l * special::hermite_density_quantile(s.n, q);
            },
            [&](HOCoherent) {
                const double sd = detail::oscillator_length(p) / std::numbers::sqrt2;
                return center + sd * special::invert_cdf(special::normal_cdf, q, -40.0, 40.0);
            },
            [&](FreeGaussian) {
                const double sd = free_packet_width(p, t);
                return center + sd * special::invert_cdf(special::normal_cdf, q, -40.0, 40.0);
            },
        },
        scn.kind);
}

}  // namespace mesodyn
