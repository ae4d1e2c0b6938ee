#ifndef TOPOFILT_TESTS_RANDOM_FILTERS_HPP
#define TOPOFILT_TESTS_RANDOM_FILTERS_HPP

// Test-only generators for random stable filters and signals.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

#include "topofilt/filters.hpp"

namespace topofilt::testing {

/// Coefficients of prod_k (1 - p_k z^-1), dropping the leading 1; returns a_1..a_N.
inline std::vector<double> expand_poles(const std::vector<std::complex<double>>& poles) {
    std::vector<std::complex<double>> poly{1.0};
    for (const auto& p : poles) {
        std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k] += poly[k];
            next[k + 1] -= p * poly[k];
        }
        poly = std::move(next);
    }
    std::vector<double> a;
    for (std::size_t k = 1; k < poly.size(); ++k) {
        a.push_back(poly[k].real());
    }
    return a;
}

/// N poles with real-symmetric layout: conjugate pairs plus one real pole for odd N,
/// each with modulus in [min_radius, max_radius] (uniform over the annulus area).
inline std::vector<std::complex<double>> random_poles(std::mt19937_64& rng, std::size_t n, double min_radius,
                                                      double max_radius) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto radius = [&] {
        const double lo = min_radius * min_radius;
        const double hi = max_radius * max_radius;
        return std::sqrt(lo + (hi - lo) * unit(rng));
    };
    std::vector<std::complex<double>> poles;
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        const auto p = std::polar(radius(), std::numbers::pi * unit(rng));
        poles.push_back(p);
        poles.push_back(std::conj(p));
    }
    if (n % 2 == 1) {
        poles.emplace_back(unit(rng) < 0.5 ? -radius() : radius(), 0.0);
    }
    return poles;
}

inline std::vector<double> uniform_vector(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) {
        x = dist(rng);
    }
    return v;
}

/// Pole-zero filter: poles uniform in the disk |z| <= max_radius, b uniform in [-1, 1].
inline FilterCoefficients<double> random_polezero(std::mt19937_64& rng, std::size_t n, double max_radius = 0.95,
                                                  double min_radius = 0.0) {
    return FilterCoefficients<double>(uniform_vector(rng, n + 1), expand_poles(random_poles(rng, n, min_radius, max_radius)));
}

/// Strictly increasing timestamps with random positive gaps.
inline std::vector<double> random_labels(std::mt19937_64& rng, std::size_t n) {
    std::exponential_distribution<double> gap(1.0);
    std::vector<double> labels(n);
    double t = std::uniform_real_distribution<double>(-10.0, 10.0)(rng);
    for (auto& l : labels) {
        l = t;
        t += gap(rng) + 1e-3;
    }
    return labels;
}

} // namespace topofilt::testing

#endif // TOPOFILT_TESTS_RANDOM_FILTERS_HPP
