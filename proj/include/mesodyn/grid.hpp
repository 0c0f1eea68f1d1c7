#pragma once

// Spatial grids, sampled wavefunctions and density matrices.

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <variant>
#include <vector>

#include "mesodyn/errors.hpp"
#include "mesodyn/scenario.hpp"

namespace mesodyn {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Periodic grid x_i = x_min + i dx, i = 0..n-1, dx = (x_max - x_min) / n.
struct SpatialGrid {
    double x_min{-8.0};
    double x_max{8.0};
    std::size_t n_points{256};

    void validate() const {
        if (!(x_max > x_min)) throw ConfigError("grid: x_max must exceed x_min");
        if (n_points < 16) throw ConfigError("grid: at least 16 points required");
    }

    double dx() const { return (x_max - x_min) / double(n_points); }
    double x(std::size_t i) const { return x_min + double(i) * dx(); }
    std::size_t size() const { return n_points; }

    /// Index of the grid point closest to x.
    std::size_t nearest(double xv) const {
        const double r = std::round((xv - x_min) / dx());
        return std::size_t(std::clamp(r, 0.0, double(n_points - 1)));
    }

    /// Angular wavenumber of FFT bin j.
    double wavenumber(std::size_t j) const {
        const double dk = 2.0 * std::numbers::pi / (double(n_points) * dx());
        const auto jj = std::ptrdiff_t(j);
        const auto n = std::ptrdiff_t(n_points);
        return dk * double(jj < n / 2 ? jj : jj - n);
    }

    /// Symmetric grid of n points over +-8 length scales.
    static SpatialGrid symmetric_default(double scale, std::size_t n = 256) {
        return SpatialGrid{-8.0 * scale, 8.0 * scale, n};
    }
};

struct FreePotential {};
struct HarmonicPotential {
    double omega{1.0};
};
using GridPotential = std::variant<FreePotential, HarmonicPotential>;

inline double potential_value(const GridPotential& v, double mass, double x) {
    if (const auto* h = std::get_if<HarmonicPotential>(&v)) return 0.5 * mass * h->omega * h->omega * x * x;
    return 0.0;
}

/// n = 1 oscillator eigenfunctions centered at x1 and x2, equal weights.
struct OscillatorPair {
    double x1{-4.0};
    double x2{4.0};
    PhysParams params{};
};

/// Two dispersive Gaussians of initial width sigma0 centered at x1 and x2, common drift u.
struct GaussianPair {
    double x1{-4.0};
    double x2{4.0};
    PhysParams params{};
};

using StateSpec = std::variant<Scenario, OscillatorPair, GaussianPair>;

namespace detail {

/// Dispersive Gaussian with s_t = sigma0 (1 + i hbar t / 2 m sigma0^2), centered at c, drift u.
inline Complex dispersive_gaussian(const PhysParams& p, double c, double x, double t) {
    const Complex st = p.sigma0 * Complex(1.0, p.hbar * t / (2.0 * p.mass * p.sigma0 * p.sigma0));
    const double k = p.mass * p.drift_u / p.hbar;
    const double d = x - c - p.drift_u * t;
    const Complex expo = Complex(0.0, k * (x - c - 0.5 * p.drift_u * t)) - d * d / (4.0 * st * p.sigma0);
    return std::pow(2.0 * std::numbers::pi * st * st, -0.25) * std::exp(expo);
}

struct Lobe {
    double center;
    double width;
};

inline std::vector<Lobe> lobes(const StateSpec& state, double t) {
    return std::visit(
        overloaded{
            [&](const Scenario& s) -> std::vector<Lobe> {
                const auto& p = s.params;
                if (const auto* st = std::get_if<HOStationary>(&s.kind))
                    return {{0.0, oscillator_length(p) * std::sqrt(st->n + 0.5)}};
                if (std::holds_alternative<HOCoherent>(s.kind))
                    return {{packet_center(s, t), oscillator_length(p)}};
                return {{packet_center(s, t), free_packet_width(p, t)}};
            },
            [&](const OscillatorPair& o) -> std::vector<Lobe> {
                const double w = oscillator_length(o.params) * std::sqrt(1.5);
                return {{o.x1, w}, {o.x2, w}};
            },
            [&](const GaussianPair& g) -> std::vector<Lobe> {
                const double w = free_packet_width(g.params, t);
                const double shift = g.params.drift_u * t;
                return {{g.x1 + shift, w}, {g.x2 + shift, w}};
            },
        },
        state);
}

}  // namespace detail

/// Samples a closed-form state on the grid and normalizes it so that sum |psi|^2 dx = 1.
///
/// OscillatorPair is antisymmetric under x -> -x when x1 = -x2 (both lobes carry the same sign
/// convention (x - x_c) e^{-(x - x_c)^2 / 2 l^2}); GaussianPair is symmetric for x1 = -x2, u = 0.
inline ComplexVector discretize_state(const StateSpec& state, const SpatialGrid& grid, double t) {
    grid.validate();
    for (const auto& lobe : detail::lobes(state, t))
        if (lobe.center - 4.0 * lobe.width < grid.x_min || lobe.center + 4.0 * lobe.width > grid.x_max)
            throw DomainError("grid does not span 4 standard deviations around every center");

    const std::size_t n = grid.size();
    ComplexVector psi(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.x(i);
        psi[Eigen::Index(i)] = std::visit(
            detail::overloaded{
                [&](const Scenario& s) {
                    return wave_amplitude(s, x, t) * std::exp(Complex(0.0, wave_phase(s, x, t) / s.params.hbar));
                },
                [&](const OscillatorPair& o) {
                    const double l = detail::oscillator_length(o.params);
                    const Complex phase = std::exp(Complex(0.0, -1.5 * o.params.omega * t));
                    return phase * (special::hermite_function(1, (x - o.x1) / l) +
                                    special::hermite_function(1, (x - o.x2) / l)) /
                           std::sqrt(2.0 * l);
                },
                [&](const GaussianPair& g) {
                    return (detail::dispersive_gaussian(g.params, g.x1, x, t) +
                            detail::dispersive_gaussian(g.params, g.x2, x, t)) /
                           std::numbers::sqrt2;
                },
            },
            state);
    }
    const double norm = std::sqrt(psi.squaredNorm() * grid.dx());
    if (!(norm > 0.0)) throw DomainError("sampled state vanishes on the grid");
    return psi / norm;
}

/// rho(x_i, x_j) sampled on a square grid.
struct DensityMatrixGrid {
    SpatialGrid grid;
    ComplexMatrix values;

    double trace() const { return values.diagonal().real().sum() * grid.dx(); }

    double hermiticity_defect() const { return (values - values.adjoint()).cwiseAbs().maxCoeff(); }

    /// Tr(rho^2) with grid quadrature.
    double purity() const {
        const double dx = grid.dx();
        return (values.cwiseAbs2().sum()) * dx * dx;
    }

    Complex at(double x, double xp) const {
        return values(Eigen::Index(grid.nearest(x)), Eigen::Index(grid.nearest(xp)));
    }
};

inline DensityMatrixGrid density_from_pure(const ComplexVector& psi, const SpatialGrid& grid) {
    if (std::size_t(psi.size()) != grid.size()) throw UsageError("wavefunction size does not match grid");
    return DensityMatrixGrid{grid, psi * psi.adjoint()};
}

namespace spectral {

/// Momentum-space probability weights |psi~(k)|^2, normalized to unit sum, per FFT bin.
inline std::vector<double> momentum_weights(const ComplexVector& psi) {
    Eigen::FFT<double> fft;
    std::vector<Complex> in(psi.data(), psi.data() + psi.size());
    std::vector<Complex> out;
    fft.fwd(out, in);
    std::vector<double> w(out.size());
    double total = 0.0;
    for (std::size_t j = 0; j < out.size(); ++j) total += (w[j] = std::norm(out[j]));
    for (auto& v : w) v /= total;
    return w;
}

/// Diagonal of the momentum-space density matrix per FFT bin, normalized to unit sum.
inline std::vector<double> momentum_weights(const DensityMatrixGrid& rho) {
    const auto n = rho.values.rows();
    Eigen::FFT<double> fft;
    ComplexMatrix half(n, n);
    std::vector<Complex> in(static_cast<std::size_t>(n)), out;
    // half = F rho, then diag(F rho F^dagger)_k = sum_j half(k,j) conj(F(k,j)).
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) in[std::size_t(i)] = rho.values(i, j);
        fft.fwd(out, in);
        for (Eigen::Index i = 0; i < n; ++i) half(i, j) = out[std::size_t(i)];
    }
    std::vector<double> w(static_cast<std::size_t>(n));
    double total = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        Complex acc{0.0, 0.0};
        for (Eigen::Index j = 0; j < n; ++j)
            acc += half(k, j) * std::polar(1.0, 2.0 * std::numbers::pi * double((k * j) % n) / double(n));
        w[std::size_t(k)] = acc.real();
        total += acc.real();
    }
    for (auto& v : w) v /= total;
    return w;
}

}  // namespace spectral

/// <H> = spectral kinetic expectation + grid potential expectation, for a normalized psi.
inline double mean_energy(const ComplexVector& psi, const SpatialGrid& grid, double mass, const GridPotential& pot,
                          double hbar = 1.0) {
    const auto w = spectral::momentum_weights(psi);
    double kinetic = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        const double p = hbar * grid.wavenumber(j);
        kinetic += w[j] * p * p / (2.0 * mass);
    }
    double potential = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double prob = std::norm(psi[Eigen::Index(i)]);
        potential += prob * potential_value(pot, mass, grid.x(i));
        norm += prob;
    }
    return kinetic + potential / norm;
}

/// Tr(H rho) / Tr(rho) for a density matrix on the grid.
inline double mean_energy(const DensityMatrixGrid& rho, double mass, const GridPotential& pot, double hbar = 1.0) {
    const auto w = spectral::momentum_weights(rho);
    double kinetic = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        const double p = hbar * rho.grid.wavenumber(j);
        kinetic += w[j] * p * p / (2.0 * mass);
    }
    double potential = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < rho.grid.size(); ++i) {
        const double prob = rho.values(Eigen::Index(i), Eigen::Index(i)).real();
        potential += prob * potential_value(pot, mass, rho.grid.x(i));
        norm += prob;
    }
    return kinetic + potential / norm;
}

}  // namespace mesodyn
