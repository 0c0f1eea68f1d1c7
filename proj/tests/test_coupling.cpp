#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "mesodyn/coupling.hpp"

using namespace mesodyn;

TEST(LambdaAt, VariantValues) {
    EXPECT_EQ(lambda_at(PureQuantum{}, 3.0), 0.0);
    EXPECT_EQ(lambda_at(PureClassical{}, 3.0), 1.0);
    EXPECT_EQ(lambda_at(FixedCoupling{0.5}, 0.0), 0.5);
    EXPECT_EQ(lambda_at(FixedCoupling{0.5}, 17.0), 0.5);
}

TEST(LambdaAt, ExponentialLimits) {
    EXPECT_EQ(lambda_at(ExponentialRelaxation{1.0}, 0.0), 0.0);
    EXPECT_NEAR(lambda_at(ExponentialRelaxation{1.0}, 30.0), 1.0, 1e-12);
    EXPECT_NEAR(lambda_at(ExponentialRelaxation{2.0}, 0.5), 1.0 - std::exp(-1.0), 1e-15);
}

TEST(LambdaAt, NegativeTimeIsDomainError) {
    EXPECT_THROW(lambda_at(PureQuantum{}, -1e-9), DomainError);
    EXPECT_THROW(lambda_at(ExponentialRelaxation{1.0}, -1.0), DomainError);
}

TEST(LambdaAt, BoundedAndMonotone) {
    const std::vector<CouplingLaw> laws{PureQuantum{},         PureClassical{},          FixedCoupling{0.0},
                                        FixedCoupling{0.3},    FixedCoupling{1.0},       ExponentialRelaxation{0.0},
                                        ExponentialRelaxation{1e-4}, ExponentialRelaxation{0.7}, ExponentialRelaxation{50.0}};
    for (const auto& law : laws) {
        double prev = lambda_at(law, 0.0);
        for (int k = 1; k <= 2000; ++k) {
            const double t = 0.01 * k * k;
            const double l = lambda_at(law, t);
            EXPECT_GE(l, 0.0);
            EXPECT_LE(l, 1.0);
            EXPECT_GE(l, prev);
            prev = l;
        }
    }
}

TEST(LambdaAt, ZeroRateIsPureQuantum) {
    for (double t : {0.0, 1.0, 1e3, 1e12}) EXPECT_EQ(lambda_at(ExponentialRelaxation{0.0}, t), 0.0);
}

TEST(Validate, RejectsOutOfRangeLaws) {
    EXPECT_THROW(validate(FixedCoupling{1.5}), ConfigError);
    EXPECT_THROW(validate(FixedCoupling{-0.1}), ConfigError);
    EXPECT_THROW(validate(ExponentialRelaxation{-1.0}), ConfigError);
    EXPECT_NO_THROW(validate(ExponentialRelaxation{0.0}));
}

TEST(ThermalWavelength, OneGramAtRoomTemperature) {
    BathParams bath{1.0, 300.0, 1e-3, 1e-2};
    // hand evaluation: 1.054571817e-34 / sqrt(2 * 1e-3 * 1.380649e-23 * 300)
    const double expected = 1.054571817e-34 / std::sqrt(8.283894e-24);
    EXPECT_NEAR(thermal_wavelength(bath) / expected, 1.0, 1e-12);
    EXPECT_NEAR(thermal_wavelength(bath), 3.664e-23, 0.001e-23);
}

TEST(ThermalWavelength, SquareRootScaling) {
    BathParams bath{1.0, 300.0, 1e-3, 1e-2};
    const double base = thermal_wavelength(bath);
    auto hot = bath;
    hot.temperature *= 4.0;
    EXPECT_NEAR(thermal_wavelength(hot), base / 2.0, 1e-15 * base);
    auto heavy = bath;
    heavy.mass *= 4.0;
    EXPECT_NEAR(thermal_wavelength(heavy), base / 2.0, 1e-15 * base);
}

TEST(DecoherenceTime, MacroscopicOrderOfMagnitude) {
    BathParams bath{1e-17, 300.0, 1e-3, 1e-2};
    const double tau = decoherence_time(bath);
    EXPECT_GE(tau, 1e-25);
    EXPECT_LE(tau, 1e-22);
    EXPECT_DOUBLE_EQ(relaxation_time(bath), 1e17);
}

TEST(DecoherenceTime, SeparationEqualToThermalWavelength) {
    BathParams bath{2.5, 10.0, 1e-20, 1.0};
    bath.separation_dx = thermal_wavelength(bath);
    EXPECT_NEAR(decoherence_time(bath) / relaxation_time(bath), 1.0, 1e-14);
}

TEST(DecoherenceTime, InverseSquareInSeparation) {
    BathParams bath{1.0, 300.0, 1e-3, 1e-2};
    auto far = bath;
    far.separation_dx *= 10.0;
    EXPECT_NEAR(decoherence_time(bath) / decoherence_time(far), 100.0, 1e-10);
}

TEST(DecoherenceTime, InvariantUnderRateSeparationRescaling) {
    BathParams bath{3.0, 77.0, 2e-25, 5e-9};
    for (double c : {0.01, 2.0, 1e6}) {
        auto scaled = bath;
        scaled.gamma *= c;
        scaled.separation_dx /= std::sqrt(c);
        EXPECT_NEAR(decoherence_time(scaled) / decoherence_time(bath), 1.0, 1e-12);
    }
}

TEST(DecoherenceTime, ConsistentWithDiffusionCoefficient) {
    BathParams bath{3.0, 77.0, 2e-25, 5e-9};
    const double d = momentum_diffusion(bath);
    const double via_d = kHbarSI * kHbarSI / (d * bath.separation_dx * bath.separation_dx);
    EXPECT_NEAR(decoherence_time(bath) / via_d, 1.0, 1e-12);
}

TEST(DecoherenceTime, ElectronOnAtomicScaleOutlivesRelaxation) {
    BathParams bath{1e9, 300.0, kElectronMassSI, 1e-10};
    EXPECT_GT(decoherence_time(bath), relaxation_time(bath));
}

TEST(BathParams, RejectsNonPositive) {
    EXPECT_THROW(thermal_wavelength(BathParams{1.0, 0.0, 1.0, 1.0}), ConfigError);
    EXPECT_THROW(decoherence_time(BathParams{1.0, 1.0, 1.0, -1.0}), ConfigError);
}
