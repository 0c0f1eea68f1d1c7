#pragma once

// Environment coupling laws lambda(t) and conventional decoherence timescales.

#include <cmath>
#include <cstdio>
#include <string>
#include <variant>

#include "mesodyn/errors.hpp"

namespace mesodyn {

struct PureQuantum {};
struct PureClassical {};
struct FixedCoupling {
    double lambda0{0.0};
};
/// lambda(t) = 1 - exp(-b t).
struct ExponentialRelaxation {
    double b{0.0};
};

using CouplingLaw = std::variant<PureQuantum, PureClassical, FixedCoupling, ExponentialRelaxation>;

inline void validate(const CouplingLaw& law) {
    if (const auto* f = std::get_if<FixedCoupling>(&law); f && !(f->lambda0 >= 0.0 && f->lambda0 <= 1.0))
        throw ConfigError("fixed coupling lambda must lie in [0, 1]");
    if (const auto* e = std::get_if<ExponentialRelaxation>(&law); e && !(e->b >= 0.0 && std::isfinite(e->b)))
        throw ConfigError("relaxation rate b must be finite and nonnegative");
}

inline std::string describe(const CouplingLaw& law) {
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    struct V {
        decltype(num) f;
        std::string operator()(PureQuantum) const { return "pure_quantum"; }
        std::string operator()(PureClassical) const { return "pure_classical"; }
        std::string operator()(FixedCoupling c) const { return "fixed(lambda=" + f(c.lambda0) + ")"; }
        std::string operator()(ExponentialRelaxation e) const { return "exponential(b=" + f(e.b) + ")"; }
    };
    return std::visit(V{num}, law);
}

/// Coupling strength at time t >= 0; 0 is the quantum limit and 1 the classical one.
inline double lambda_at(const CouplingLaw& law, double t) {
    if (!(t >= 0.0)) throw DomainError("lambda_at: t must be nonnegative");
    struct V {
        double t;
        double operator()(PureQuantum) const { return 0.0; }
        double operator()(PureClassical) const { return 1.0; }
        double operator()(FixedCoupling f) const { return f.lambda0; }
        double operator()(ExponentialRelaxation e) const { return -std::expm1(-e.b * t); }
    };
    return std::visit(V{t}, law);
}

// CODATA 2018 exact / recommended values.
inline constexpr double kHbarSI = 1.054571817e-34;      // J s
inline constexpr double kBoltzmannSI = 1.380649e-23;    // J / K
inline constexpr double kElectronMassSI = 9.1093837015e-31;  // kg

/// Heat-bath parameters in SI units. gamma is a rate (1/tau_R).
struct BathParams {
    double gamma{1.0};          // 1/s
    double temperature{300.0};  // K
    double mass{1.0};           // kg
    double separation_dx{1.0};  // m

    void validate() const {
        if (!(gamma > 0.0) || !(temperature > 0.0) || !(mass > 0.0) || !(separation_dx > 0.0))
            throw ConfigError("bath parameters must all be strictly positive");
    }
};

/// lambda_T = hbar / sqrt(2 m k_B T).
inline double thermal_wavelength(const BathParams& bath) {
    bath.validate();
    return kHbarSI / std::sqrt(2.0 * bath.mass * kBoltzmannSI * bath.temperature);
}

inline double relaxation_time(const BathParams& bath) {
    bath.validate();
    return 1.0 / bath.gamma;
}

/// Momentum diffusion coefficient D = 2 m gamma k_B T.
inline double momentum_diffusion(const BathParams& bath) {
    bath.validate();
    return 2.0 * bath.mass * bath.gamma * kBoltzmannSI * bath.temperature;
}

/// tau_D = (1/gamma) (lambda_T / dx)^2, equal to hbar^2 / (D dx^2).
inline double decoherence_time(const BathParams& bath) {
    const double r = thermal_wavelength(bath) / bath.separation_dx;
    return r * r / bath.gamma;
}

}  // namespace mesodyn
