#pragma once

// Caldeira-Leggett type master equation on a position grid,
//     d rho/dt = -(i/hbar)[H, rho] - gamma (x - x')(d_x - d_x') rho - (D/hbar^2)(x - x')^2 rho,
// advanced by Strang splitting: unitary half step, friction, decoherence, unitary half step.

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "mesodyn/errors.hpp"
#include "mesodyn/grid.hpp"

namespace mesodyn {

enum class MasterMode { Full, DecoherenceOnly, UnitaryOnly };

struct MasterEqParams {
    double gamma{0.0};  // friction rate
    double D{0.0};      // momentum diffusion, 2 m gamma k_B T
    MasterMode mode{MasterMode::Full};
    double dt{1e-3};
    GridPotential potential{FreePotential{}};
    double mass{1.0};
    double hbar{1.0};

    void validate() const {
        if (!(gamma >= 0.0) || !(D >= 0.0)) throw ConfigError("master equation: gamma and D must be nonnegative");
        if (!(dt > 0.0)) throw ConfigError("master equation: dt must be positive");
        if (!(mass > 0.0) || !(hbar > 0.0)) throw ConfigError("master equation: mass and hbar must be positive");
    }
};

struct MasterSnapshots {
    std::vector<double> times;
    std::vector<DensityMatrixGrid> states;
};

namespace detail {

class MasterStepper {
public:
    MasterStepper(const SpatialGrid& grid, const MasterEqParams& p) : grid_(grid), p_(p) {
        const auto n = Eigen::Index(grid.size());
        const double half = 0.5 * p.dt;
        kinetic_.resize(n);
        potential_.resize(n);
        decay_.resize(n, n);
        for (Eigen::Index j = 0; j < n; ++j) {
            const double k = grid.wavenumber(std::size_t(j));
            kinetic_[j] = std::polar(1.0, -p.hbar * k * k / (2.0 * p.mass) * half);
            // potential kicks of dt/4 sandwich the kinetic drift inside each unitary half step
            potential_[j] = std::polar(1.0, -potential_value(p.potential, p.mass, grid.x(std::size_t(j))) *
                                                0.5 * half / p.hbar);
        }
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                const double sep = grid.x(std::size_t(i)) - grid.x(std::size_t(j));
                decay_(i, j) = std::exp(-p.D * sep * sep * p.dt / (p.hbar * p.hbar));
            }
        col_.resize(std::size_t(n));
    }

    void step(ComplexMatrix& rho) {
        const bool unitary = p_.mode != MasterMode::DecoherenceOnly;
        const bool dissipative = p_.mode != MasterMode::UnitaryOnly;
        if (unitary) unitary_half(rho);
        if (dissipative) {
            if (p_.mode == MasterMode::Full && p_.gamma > 0.0) friction(rho);
            rho.array() *= decay_.array();
        }
        if (unitary) unitary_half(rho);
    }

private:
    bool has_potential() const { return std::holds_alternative<HarmonicPotential>(p_.potential); }

    void potential_kick(ComplexMatrix& rho) const {
        const auto n = rho.rows();
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i) rho(i, j) *= potential_[i] * std::conj(potential_[j]);
    }

    // rho -> U rho U^dagger with U = exp(-i T dt/2 / hbar), applied spectrally to columns then rows.
    void kinetic_drift(ComplexMatrix& rho) {
        const auto n = rho.rows();
        for (Eigen::Index j = 0; j < n; ++j) {
            for (Eigen::Index i = 0; i < n; ++i) col_[std::size_t(i)] = rho(i, j);
            fft_.fwd(spec_, col_);
            for (Eigen::Index k = 0; k < n; ++k) spec_[std::size_t(k)] *= kinetic_[k];
            fft_.inv(col_, spec_);
            for (Eigen::Index i = 0; i < n; ++i) rho(i, j) = col_[std::size_t(i)];
        }
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) col_[std::size_t(j)] = rho(i, j);
            fft_.fwd(spec_, col_);
            for (Eigen::Index k = 0; k < n; ++k) spec_[std::size_t(k)] *= std::conj(kinetic_[k]);
            fft_.inv(col_, spec_);
            for (Eigen::Index j = 0; j < n; ++j) rho(i, j) = col_[std::size_t(j)];
        }
    }

    void unitary_half(ComplexMatrix& rho) {
        if (has_potential()) potential_kick(rho);
        kinetic_drift(rho);
        if (has_potential()) potential_kick(rho);
    }

    // Unsplit first-order upwind for -gamma (x - x') (d_x - d_x') rho. The update is symmetric under
    // (i,j) -> (j,i) with conjugation, so Hermiticity is kept, and it vanishes on the diagonal.
    void friction(ComplexMatrix& rho) const {
        const auto n = rho.rows();
        const double dx = grid_.dx();
        const ComplexMatrix old = rho;
        auto at = [&](Eigen::Index i, Eigen::Index j) -> Complex {
            return (i < 0 || j < 0 || i >= n || j >= n) ? Complex{} : old(i, j);
        };
        for (Eigen::Index j = 0; j < n; ++j) {
            for (Eigen::Index i = 0; i < n; ++i) {
                const double c = p_.gamma * (grid_.x(std::size_t(i)) - grid_.x(std::size_t(j)));
                if (c == 0.0) continue;
                // advection speed +c along x, -c along x'
                const Complex dxr = c > 0.0 ? old(i, j) - at(i - 1, j) : at(i + 1, j) - old(i, j);
                const Complex dxp = c > 0.0 ? at(i, j + 1) - old(i, j) : old(i, j) - at(i, j - 1);
                rho(i, j) = old(i, j) - p_.dt / dx * (c * dxr - c * dxp);
            }
        }
    }

    SpatialGrid grid_;
    MasterEqParams p_;
    Eigen::VectorXcd kinetic_;
    Eigen::VectorXcd potential_;
    Eigen::MatrixXd decay_;
    Eigen::FFT<double> fft_;
    std::vector<Complex> col_;
    std::vector<Complex> spec_;
};

}  // namespace detail

/// Largest combined Courant number of the upwind friction step, 2 gamma max|x - x'| dt / dx.
inline double friction_courant_number(const SpatialGrid& grid, const MasterEqParams& p) {
    const double span = grid.x(grid.size() - 1) - grid.x(0);
    return 2.0 * p.gamma * span * p.dt / grid.dx();
}

/// Evolves rho0 for `steps` steps and keeps a snapshot every `snapshot_stride` steps (and at t = 0).
inline MasterSnapshots evolve_master(const DensityMatrixGrid& rho0, const MasterEqParams& params, std::size_t steps,
                                     std::size_t snapshot_stride = 1) {
    params.validate();
    if (snapshot_stride < 1) throw ConfigError("snapshot stride must be at least 1");
    if (params.mode == MasterMode::Full && friction_courant_number(rho0.grid, params) > 1.0)
        throw ConfigError("friction step violates the CFL bound: 2 gamma max|x - x'| dt / dx = " +
                          std::to_string(friction_courant_number(rho0.grid, params)) + " > 1");

    MasterSnapshots out;
    out.times.push_back(0.0);
    out.states.push_back(rho0);
    detail::MasterStepper stepper(rho0.grid, params);
    ComplexMatrix rho = rho0.values;
    for (std::size_t s = 1; s <= steps; ++s) {
        stepper.step(rho);
        if (s % snapshot_stride == 0) {
            if (!rho.allFinite())
                throw IntegrationError("non-finite density matrix in evolve_master", double(s - 1) * params.dt);
            out.times.push_back(double(s) * params.dt);
            out.states.push_back(DensityMatrixGrid{rho0.grid, rho});
        }
    }
    return out;
}

/// Decay rate -d/dt log|rho(x_a, x_b, t)| from a least-squares line through the snapshots.
inline double coherence_decay_rate(const MasterSnapshots& snaps, double x_a, double x_b) {
    if (snaps.states.size() < 5) throw FitError("coherence fit needs at least 5 snapshots");
    const auto& grid = snaps.states.front().grid;
    const auto ia = Eigen::Index(grid.nearest(x_a));
    const auto ib = Eigen::Index(grid.nearest(x_b));
    if (std::abs(snaps.states.front().values(ia, ib)) <= 1e-6)
        throw FitError("initial coherence at the probe points is below 1e-6");

    std::vector<double> ts, ys;
    for (std::size_t k = 0; k < snaps.states.size(); ++k) {
        const auto& v = snaps.states[k].values;
        const double floor = 1e-13 * v.diagonal().real().cwiseAbs().maxCoeff();
        const double c = std::abs(v(ia, ib));
        if (c <= floor) break;
        ts.push_back(snaps.times[k]);
        ys.push_back(std::log(c));
    }
    if (ts.size() < 5) throw FitError("coherence falls below the noise floor before 5 snapshots");

    const double n = double(ts.size());
    const double tm = std::accumulate(ts.begin(), ts.end(), 0.0) / n;
    const double ym = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        sxy += (ts[k] - tm) * (ys[k] - ym);
        sxx += (ts[k] - tm) * (ts[k] - tm);
    }
    return -sxy / sxx;
}

}  // namespace mesodyn
