#pragma once

// Wigner transform W(x,p) = (1/2 pi hbar) int e^{ipy/hbar} rho(x - y/2, x + y/2) dy and
// phase-space diagnostics built on it.
//
// The anti-diagonal is sampled at y = 2 k dx so that x -+ y/2 falls on grid points; no
// interpolation is involved. W is then periodic in p with period pi hbar / dx, and momentum
// axes are restricted to |p| < pi hbar / (2 dx).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "mesodyn/errors.hpp"
#include "mesodyn/grid.hpp"

namespace mesodyn {

/// p_j = p_min + j dp, j = 0..n-1.
struct MomentumAxis {
    double p_min{-8.0};
    double dp{0.0625};
    std::size_t n_points{256};

    double p(std::size_t j) const { return p_min + double(j) * dp; }
    std::size_t size() const { return n_points; }
    std::size_t nearest(double pv) const {
        const double r = std::round((pv - p_min) / dp);
        return std::size_t(std::clamp(r, 0.0, double(n_points - 1)));
    }

    /// Symmetric axis of n points over [-half_width, half_width).
    static MomentumAxis symmetric(double half_width, std::size_t n) {
        return MomentumAxis{-half_width, 2.0 * half_width / double(n), n};
    }
};

/// Real W sampled on x (rows) by p (columns).
struct WignerGrid {
    SpatialGrid x_grid;
    MomentumAxis p_axis;
    Eigen::MatrixXd values;
    double max_imag_residue{0.0};

    double dx() const { return x_grid.dx(); }
    double dp() const { return p_axis.dp; }

    double normalization() const { return values.sum() * dx() * dp(); }

    double at(double x, double p) const {
        return values(Eigen::Index(x_grid.nearest(x)), Eigen::Index(p_axis.nearest(p)));
    }

    /// sum_p W dp per x_i; reproduces rho(x_i, x_i).
    Eigen::VectorXd position_marginal() const { return values.rowwise().sum() * dp(); }

    /// sum_x W dx per p_j; reproduces |psi~(p_j)|^2 for pure states.
    Eigen::VectorXd momentum_marginal() const { return values.colwise().sum().transpose() * dx(); }
};

/// Default momentum axis: centered on p = 0, n points, half-width |<p>| + 8 std(p)
/// capped below the aliasing limit pi hbar / (2 dx).
inline MomentumAxis default_momentum_axis(const DensityMatrixGrid& rho, double hbar = 1.0) {
    const auto w = spectral::momentum_weights(rho);
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        const double p = hbar * rho.grid.wavenumber(j);
        m1 += w[j] * p;
        m2 += w[j] * p * p;
    }
    const double sd = std::sqrt(std::max(m2 - m1 * m1, 0.0));
    const double nyquist = std::numbers::pi * hbar / (2.0 * rho.grid.dx());
    const double half = std::min(std::abs(m1) + 8.0 * sd, 0.999 * nyquist);
    return MomentumAxis::symmetric(half, rho.grid.size());
}

inline WignerGrid wigner_transform(const DensityMatrixGrid& rho, const MomentumAxis& axis, double hbar = 1.0) {
    const auto n = Eigen::Index(rho.grid.size());
    const double dx = rho.grid.dx();
    const double nyquist = std::numbers::pi * hbar / (2.0 * dx);
    if (axis.n_points < 1 || !(axis.dp > 0.0)) throw ConfigError("momentum axis is empty");
    if (std::abs(axis.p(0)) >= nyquist || std::abs(axis.p(axis.size() - 1)) >= nyquist)
        throw ConfigError("momentum axis exceeds the aliasing limit pi hbar / (2 dx)");

    const auto np = Eigen::Index(axis.size());
    // phase(j, k + n - 1) = exp(2 i p_j k dx / hbar), k in (-n, n)
    Eigen::MatrixXcd phase(np, 2 * n - 1);
    for (Eigen::Index j = 0; j < np; ++j)
        for (Eigen::Index k = -(n - 1); k < n; ++k)
            phase(j, k + n - 1) = std::polar(1.0, 2.0 * axis.p(std::size_t(j)) * double(k) * dx / hbar);

    WignerGrid out{rho.grid, axis, Eigen::MatrixXd(n, np), 0.0};
    const double scale = dx / (std::numbers::pi * hbar);
    Eigen::VectorXcd anti(2 * n - 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        anti.setZero();
        const Eigen::Index kmax = std::min(i, n - 1 - i);
        for (Eigen::Index k = -kmax; k <= kmax; ++k) anti[k + n - 1] = rho.values(i - k, i + k);
        const Eigen::VectorXcd row = phase * anti;
        for (Eigen::Index j = 0; j < np; ++j) {
            out.values(i, j) = scale * row[j].real();
            out.max_imag_residue = std::max(out.max_imag_residue, scale * std::abs(row[j].imag()));
        }
    }
    if (out.max_imag_residue > 1e-8)
        throw UsageError("Wigner transform has imaginary residue " + std::to_string(out.max_imag_residue) +
                         "; input is not Hermitian");
    return out;
}

inline WignerGrid wigner_transform(const DensityMatrixGrid& rho, double hbar = 1.0) {
    return wigner_transform(rho, default_momentum_axis(rho, hbar), hbar);
}

struct WignerEnergyField {
    Eigen::MatrixXd values;  // NaN where masked
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> mask;  // true = kept
    std::size_t kept{0};
    double mean{0.0};    // |W|-weighted mean over kept entries
    double stddev{0.0};  // unweighted standard deviation over kept entries
};

/// E(x,p) = p^2/2m + m w^2 x^2/2 - (hbar^2 / 8 m W) W_xx - (m w^2 hbar^2 / 8 W) W_pp.
///
/// Second derivatives use the five-point central stencil; the two outermost rows and columns are
/// masked along with every entry where |W| < mask_fraction * max|W|.
inline WignerEnergyField wigner_energy_field(const WignerGrid& w, double mass, double omega, double hbar,
                                             double mask_fraction = 1e-3) {
    const auto nx = w.values.rows();
    const auto np = w.values.cols();
    const double hx = w.dx();
    const double hp = w.dp();
    const double threshold = mask_fraction * w.values.cwiseAbs().maxCoeff();
    if (!(threshold > 0.0)) throw DegenerateInputError("Wigner grid is identically zero");
    const auto& W = w.values;

    WignerEnergyField f;
    f.values = Eigen::MatrixXd::Constant(nx, np, std::numeric_limits<double>::quiet_NaN());
    f.mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(nx, np, false);
    auto d2 = [](double m2, double m1, double c, double p1, double p2, double h) {
        return (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h);
    };

    double wsum = 0.0, esum = 0.0;
    std::vector<double> kept;
    for (Eigen::Index i = 2; i + 2 < nx; ++i) {
        const double x = w.x_grid.x(std::size_t(i));
        for (Eigen::Index j = 2; j + 2 < np; ++j) {
            const double c = W(i, j);
            if (std::abs(c) < threshold) continue;
            const double p = w.p_axis.p(std::size_t(j));
            const double wxx = d2(W(i - 2, j), W(i - 1, j), c, W(i + 1, j), W(i + 2, j), hx);
            const double wpp = d2(W(i, j - 2), W(i, j - 1), c, W(i, j + 1), W(i, j + 2), hp);
            const double e = p * p / (2.0 * mass) + 0.5 * mass * omega * omega * x * x -
                             hbar * hbar / (8.0 * mass * c) * wxx - mass * omega * omega * hbar * hbar / (8.0 * c) * wpp;
            f.values(i, j) = e;
            f.mask(i, j) = true;
            kept.push_back(e);
            wsum += std::abs(c);
            esum += std::abs(c) * e;
        }
    }
    if (kept.empty()) throw DegenerateInputError("every Wigner entry is masked");
    f.kept = kept.size();
    f.mean = esum / wsum;
    double m = 0.0;
    for (double e : kept) m += e;
    m /= double(kept.size());
    double ss = 0.0;
    for (double e : kept) ss += (e - m) * (e - m);
    f.stddev = std::sqrt(ss / double(kept.size()));
    return f;
}

/// <p> over the Wigner grid.
inline double mean_momentum(const WignerGrid& w) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < w.values.cols(); ++j) acc += w.p_axis.p(std::size_t(j)) * w.values.col(j).sum();
    return acc * w.dx() * w.dp();
}

/// <p^2> - <p>^2 over the Wigner grid.
inline double momentum_variance(const WignerGrid& w) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < w.values.cols(); ++j) {
        const double p = w.p_axis.p(std::size_t(j));
        acc += p * p * w.values.col(j).sum();
    }
    const double m1 = mean_momentum(w);
    return acc * w.dx() * w.dp() - m1 * m1;
}

}  // namespace mesodyn
