#pragma once

// Hermite functions and Gaussian / Hermite-Gaussian position distributions.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "mesodyn/errors.hpp"

namespace mesodyn::special {

/// Normalized Hermite function h_n(xi) = H_n(xi) e^{-xi^2/2} / sqrt(2^n n! sqrt(pi)),
/// evaluated with the stable three-term recurrence.
inline double hermite_function(unsigned n, double xi) {
    const double g = std::exp(-0.5 * xi * xi) / std::sqrt(std::sqrt(std::numbers::pi));
    if (n == 0) return g;
    double prev = g;
    double cur = std::sqrt(2.0) * xi * g;
    for (unsigned k = 1; k < n; ++k) {
        const double next = std::sqrt(2.0 / (k + 1)) * xi * cur - std::sqrt(double(k) / (k + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Coefficients c_j of the physicists' Hermite polynomial H_n(xi) = sum_j c_j xi^j.
inline std::vector<double> hermite_coefficients(unsigned n) {
    std::vector<double> prev{1.0};
    if (n == 0) return prev;
    std::vector<double> cur{0.0, 2.0};
    for (unsigned k = 1; k < n; ++k) {
        std::vector<double> next(k + 2, 0.0);
        for (std::size_t j = 0; j < cur.size(); ++j) next[j + 1] += 2.0 * cur[j];
        for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= 2.0 * k * prev[j];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// Standard normal cumulative distribution.
inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

namespace detail {

/// Coefficients of H_n(xi)^2, indexed by power of xi (only even powers are nonzero).
inline std::vector<double> hermite_square_coefficients(unsigned n) {
    const auto h = hermite_coefficients(n);
    std::vector<double> sq(2 * n + 1, 0.0);
    for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = 0; j < h.size(); ++j) sq[i + j] += h[i] * h[j];
    return sq;
}

/// sqrt(pi) 2^n n!, the integral of H_n^2 e^{-xi^2} over the real line.
inline double hermite_square_norm(unsigned n) {
    double norm = std::sqrt(std::numbers::pi);
    for (unsigned k = 1; k <= n; ++k) norm *= 2.0 * k;
    return norm;
}

}  // namespace detail

/// Lower-tail mass int_{-inf}^{z} h_n^2 for z <= 0.
///
/// Uses I_k(z) = int_{-inf}^z xi^{2k} e^{-xi^2} dxi with
/// I_k = -z^{2k-1} e^{-z^2} / 2 + (2k-1)/2 I_{k-1}; every term is nonnegative for z <= 0.
inline double hermite_density_tail(unsigned n, double z) {
    const auto sq = detail::hermite_square_coefficients(n);
    const double gauss = std::exp(-z * z);
    double ik = 0.5 * std::sqrt(std::numbers::pi) * std::erfc(-z);
    double acc = sq[0] * ik;
    for (unsigned k = 1; k <= n; ++k) {
        ik = -0.5 * std::pow(z, 2 * k - 1) * gauss + 0.5 * (2.0 * k - 1.0) * ik;
        acc += sq[2 * k] * ik;
    }
    return acc / detail::hermite_square_norm(n);
}

/// Central mass int_0^a h_n^2 for a >= 0; power series below a = 1 so that the result keeps full
/// relative precision near the origin, where h_n^2 may vanish (odd n).
inline double hermite_density_central(unsigned n, double a) {
    const auto sq = detail::hermite_square_coefficients(n);
    double acc = 0.0;
    if (a <= 1.0) {
        const double a2 = a * a;
        for (unsigned k = 0; k <= n; ++k) {
            // int_0^a xi^{2k} e^{-xi^2} = sum_m (-1)^m a^{2k+2m+1} / (m! (2k+2m+1))
            double term = std::pow(a, 2 * k + 1);
            double jk = 0.0;
            for (unsigned m = 0; m < 60; ++m) {
                jk += term / double(2 * k + 2 * m + 1);
                term *= -a2 / double(m + 1);
            }
            acc += sq[2 * k] * jk;
        }
    } else {
        const double gauss = std::exp(-a * a);
        double jk = 0.5 * std::sqrt(std::numbers::pi) * std::erf(a);
        acc = sq[0] * jk;
        for (unsigned k = 1; k <= n; ++k) {
            jk = -0.5 * std::pow(a, 2 * k - 1) * gauss + 0.5 * (2.0 * k - 1.0) * jk;
            acc += sq[2 * k] * jk;
        }
    }
    return acc / detail::hermite_square_norm(n);
}

/// Cumulative distribution of the density h_n(xi)^2.
inline double hermite_density_cdf(unsigned n, double z) {
    if (z <= -1.0) return hermite_density_tail(n, z);
    if (z >= 1.0) return 1.0 - hermite_density_tail(n, -z);
    return z < 0.0 ? 0.5 - hermite_density_central(n, -z) : 0.5 + hermite_density_central(n, z);
}

/// Inverts a continuous nondecreasing CDF by bisection on [lo, hi].
inline double invert_cdf(const std::function<double(double)>& cdf, double q, double lo, double hi) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("quantile level must lie in (0, 1)");
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        (cdf(mid) < q ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Quantile of the density h_n(xi)^2. Levels near 1/2 are solved on the central mass so that the
/// result stays accurate when the density vanishes at the origin.
inline double hermite_density_quantile(unsigned n, double q) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("quantile level must lie in (0, 1)");
    if (q < 0.25) return invert_cdf([n](double z) { return hermite_density_tail(n, z); }, q, -60.0, 0.0);
    if (q > 0.75) return -hermite_density_quantile(n, 1.0 - q);
    if (q == 0.5) return 0.0;
    const double target = std::abs(q - 0.5);
    const double a = invert_cdf([n](double z) { return hermite_density_central(n, z) / 0.5; }, target / 0.5, 0.0, 60.0);
    return q < 0.5 ? -a : a;
}

}  // namespace mesodyn::special
