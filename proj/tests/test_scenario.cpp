#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "mesodyn/scenario.hpp"
#include "oracles.hpp"

using namespace mesodyn;

namespace {

std::vector<Scenario> all_scenarios() {
    PhysParams coh;
    coh.amplitude_a = 1.3;
    PhysParams fg;
    fg.sigma0 = 0.8;
    fg.drift_u = 0.6;
    PhysParams heavy;
    heavy.mass = 2.0;
    heavy.omega = 1.5;
    heavy.hbar = 0.7;
    return {Scenario::stationary(0), Scenario::stationary(1), Scenario::stationary(2), Scenario::stationary(3, heavy),
            Scenario::coherent(coh), Scenario::coherent(heavy), Scenario::free_gaussian(fg),
            Scenario::free_gaussian(heavy)};
}

const std::vector<double> kTimes{0.0, 0.37, 1.4, 3.1};

}  // namespace

TEST(WaveAmplitude, CoherentPeakAtOrigin) {
    PhysParams p;
    p.amplitude_a = 1.0;
    EXPECT_NEAR(wave_amplitude(Scenario::coherent(p), 1.0, 0.0), std::pow(1.0 / std::numbers::pi, 0.25), 1e-15);
    EXPECT_NEAR(wave_amplitude(Scenario::coherent(p), 1.0, 0.0), 0.7511, 1e-4);
}

TEST(WaveAmplitude, FreeGaussianAtCenter) {
    EXPECT_NEAR(wave_amplitude(Scenario::free_gaussian(), 0.0, 0.0), std::pow(2.0 * std::numbers::pi, -0.25), 1e-15);
    EXPECT_NEAR(wave_amplitude(Scenario::free_gaussian(), 0.0, 0.0), 0.6316, 1e-4);
}

TEST(WaveAmplitude, CoherentPeakFollowsClassicalPath) {
    PhysParams p;
    p.amplitude_a = 2.0;
    const auto s = Scenario::coherent(p);
    const double peak = wave_amplitude(s, 2.0, 0.0);
    for (double t : kTimes) EXPECT_DOUBLE_EQ(wave_amplitude(s, 2.0 * std::cos(t), t), peak);
}

TEST(WaveAmplitude, NormalizedDensity) {
    for (const auto& s : all_scenarios())
        for (double t : kTimes) {
            const double norm = oracle::simpson([&](double x) {
                const double r = wave_amplitude(s, x, t);
                return r * r;
            }, -40.0, 40.0, 40000);
            EXPECT_NEAR(norm, 1.0, 1e-10) << s.name() << " t=" << t;
        }
}

TEST(WavePhase, StationaryEnergyPhase) {
    EXPECT_DOUBLE_EQ(wave_phase(Scenario::stationary(0), 0.3, 2.0), -1.0);
    EXPECT_DOUBLE_EQ(wave_phase(Scenario::stationary(2), -1.0, 2.0), -5.0);
}

TEST(WavePhase, VanishesAtOriginOfTime) {
    for (double x : {-2.0, 0.0, 0.5, 3.0}) {
        EXPECT_EQ(wave_phase(Scenario::coherent(), x, 0.0), 0.0);
        EXPECT_EQ(wave_phase(Scenario::free_gaussian(), x, 0.0), 0.0);
    }
}

TEST(QuantumPotential, ClosedFormValues) {
    EXPECT_DOUBLE_EQ(quantum_potential(Scenario::stationary(1), 0.0, 0.0), 1.5);
    EXPECT_DOUBLE_EQ(quantum_potential(Scenario::coherent(), 1.0, 0.0), 0.5);
    EXPECT_DOUBLE_EQ(quantum_potential(Scenario::free_gaussian(), 0.0, 0.0), 0.25);
}

// Q = -(hbar^2 / 2m) R''/R wherever |R| > 1e-6, with R'' from central differences.
TEST(QuantumPotential, ConsistentWithAmplitudeCurvature) {
    for (const auto& s : all_scenarios()) {
        const auto& p = s.params;
        for (double t : kTimes)
            for (double x = -4.0; x <= 4.0; x += 0.173) {
                const auto R = [&](double y) { return wave_amplitude(s, y, t); };
                const double r = R(x);
                if (std::abs(r) <= 1e-6) continue;
                const double fd = -p.hbar * p.hbar / (2.0 * p.mass) * oracle::central_second(R, x, 1e-4) / r;
                const double q = quantum_potential(s, x, t);
                EXPECT_LT(std::abs(q - fd), 1e-5 * (1.0 + std::abs(q))) << s.name() << " x=" << x << " t=" << t;
            }
    }
}

TEST(QuantumForce, AgreesWithFiniteDifference) {
    for (const auto& s : all_scenarios())
        for (double t : kTimes)
            for (double x = -4.0; x <= 4.0; x += 0.31) {
                const double fd = -oracle::central_first([&](double y) { return quantum_potential(s, y, t); }, x);
                const double f = quantum_force(s, x, t);
                EXPECT_LT(std::abs(f - fd), 1e-5 * (1.0 + std::abs(f))) << s.name();
            }
}

TEST(QuantumForce, ZeroOnPacketCenter) {
    PhysParams p;
    p.amplitude_a = 1.7;
    p.drift_u = 0.4;
    for (double t : kTimes) {
        EXPECT_NEAR(quantum_force(Scenario::coherent(p), 1.7 * std::cos(t), t), 0.0, 1e-15);
        EXPECT_NEAR(quantum_force(Scenario::free_gaussian(p), 0.4 * t, t), 0.0, 1e-15);
    }
    EXPECT_DOUBLE_EQ(quantum_force(Scenario::stationary(0), 1.0, 0.0), 1.0);
}

TEST(ClassicalForce, Values) {
    EXPECT_DOUBLE_EQ(classical_force(Scenario::stationary(1), 1.0), -1.0);
    EXPECT_DOUBLE_EQ(classical_force(Scenario::coherent(), 1.0), -1.0);
    EXPECT_EQ(classical_force(Scenario::coherent(), 0.0), 0.0);
    EXPECT_EQ(classical_force(Scenario::free_gaussian(), 3.0), 0.0);
}

TEST(ClassicalForce, CancelsQuantumForceInEigenstates) {
    PhysParams p;
    p.mass = 1.7;
    p.omega = 0.9;
    for (unsigned n = 0; n < 5; ++n) {
        const auto s = Scenario::stationary(n, p);
        for (double x = -10.0; x <= 10.0; x += 0.0731)
            EXPECT_LE(std::abs(classical_force(s, x) + quantum_force(s, x, 1.0)), 1e-12);
    }
}

TEST(GuidanceVelocity, Values) {
    for (double x : {-1.0, 0.0, 2.0}) EXPECT_EQ(guidance_velocity(Scenario::stationary(2), x, 1.3), 0.0);
    for (double x : {-1.0, 0.0, 2.0})
        EXPECT_NEAR(guidance_velocity(Scenario::coherent(), x, std::numbers::pi / 2.0), -1.0, 1e-15);
    PhysParams p;
    p.drift_u = 0.8;
    for (double t : kTimes) EXPECT_NEAR(guidance_velocity(Scenario::free_gaussian(p), 0.8 * t, t), 0.8, 1e-15);
}

TEST(GuidanceVelocity, AgreesWithPhaseGradient) {
    for (const auto& s : all_scenarios())
        for (double t : kTimes)
            for (double x = -4.0; x <= 4.0; x += 0.29) {
                const double fd =
                    oracle::central_first([&](double y) { return wave_phase(s, y, t); }, x) / s.params.mass;
                const double v = guidance_velocity(s, x, t);
                EXPECT_LT(std::abs(v - fd), 1e-5 * (1.0 + std::abs(v))) << s.name() << " x=" << x << " t=" << t;
            }
}

// The guidance field must transport the density: the phase is consistent with the continuity
// equation d(R^2)/dt + d(R^2 v)/dx = 0.
TEST(GuidanceVelocity, SatisfiesContinuity) {
    for (const auto& s : all_scenarios())
        for (double t : {0.37, 1.4})
            for (double x = -3.0; x <= 3.0; x += 0.37) {
                const auto rho = [&](double y, double tt) {
                    const double r = wave_amplitude(s, y, tt);
                    return r * r;
                };
                const double dt_rho = (rho(x, t + 1e-5) - rho(x, t - 1e-5)) / 2e-5;
                const double dx_flux = oracle::central_first(
                    [&](double y) { return rho(y, t) * guidance_velocity(s, y, t); }, x);
                EXPECT_NEAR(dt_rho + dx_flux, 0.0, 1e-7) << s.name();
            }
}

TEST(DensityQuantile, MedianIsCenter) {
    PhysParams p;
    p.amplitude_a = 1.0;
    EXPECT_NEAR(density_quantile(Scenario::free_gaussian(), 0.5, 0.0), 0.0, 1e-12);
    EXPECT_NEAR(density_quantile(Scenario::coherent(p), 0.5, 0.0), 1.0, 1e-12);
    EXPECT_NEAR(density_quantile(Scenario::stationary(1), 0.5, 0.0), 0.0, 1e-12);
}

TEST(DensityQuantile, OneSigmaOfFreePacket) {
    const double q = special::normal_cdf(1.0);  // 0.8413...
    EXPECT_NEAR(density_quantile(Scenario::free_gaussian(), q, 0.0), 1.0, 1e-10);
}

TEST(DensityQuantile, SymmetricLevels) {
    PhysParams p;
    p.amplitude_a = 0.7;
    for (const auto& s : all_scenarios())
        for (double q : {0.01, 0.2, 0.45}) {
            const double c = packet_center(s, 0.9);
            const double lo = density_quantile(s, q, 0.9);
            const double hi = density_quantile(s, 1.0 - q, 0.9);
            EXPECT_NEAR((lo - c) + (hi - c), 0.0, 1e-9) << s.name();
        }
}

TEST(DensityQuantile, InvertsNumericalCdf) {
    for (const auto& s : all_scenarios())
        for (double q : {0.03, 0.25, 0.5, 0.61, 0.97}) {
            const double t = 0.6;
            const double x = density_quantile(s, q, t);
            const double cdf = oracle::simpson([&](double y) {
                const double r = wave_amplitude(s, y, t);
                return r * r;
            }, -40.0, x, 40000);
            EXPECT_NEAR(cdf, q, 1e-8) << s.name() << " q=" << q;
        }
}

TEST(DensityQuantile, DomainErrors) {
    EXPECT_THROW(density_quantile(Scenario::free_gaussian(), 0.0, 0.0), DomainError);
    EXPECT_THROW(density_quantile(Scenario::free_gaussian(), 1.0, 0.0), DomainError);
    EXPECT_THROW(density_quantile(Scenario::coherent(), -0.2, 0.0), DomainError);
}

TEST(Scenario, ValidateRejectsBadParameters) {
    PhysParams p;
    p.mass = 0.0;
    EXPECT_THROW(Scenario::coherent(p).validate(), ConfigError);
    PhysParams q;
    q.sigma0 = -1.0;
    EXPECT_THROW(Scenario::free_gaussian(q).validate(), ConfigError);
    EXPECT_NO_THROW(Scenario::stationary(2, q).validate());
}
