#ifndef TOPOFILT_FILTERS_HPP
#define TOPOFILT_FILTERS_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "sheaf.hpp"

namespace topofilt {

/**
 * Coefficients of
 *
 *   y[n] = sum_{i=0..N} b_i x[n-i] - sum_{j=1..N} a_j y[n-j]
 *
 * with a_0 = 1 implied. Both lists are padded to the common order N, so
 * b has N+1 entries and a has N.
 */
template <std::floating_point T>
class FilterCoefficients {
public:
    FilterCoefficients(std::vector<T> b, std::vector<T> a) : b_(std::move(b)), a_(std::move(a)) {
        if (b_.empty() && a_.empty()) {
            throw Error(Errc::EmptyFilter, "no coefficients given");
        }
        auto finite = [](const std::vector<T>& v, const char* name) {
            for (std::size_t k = 0; k < v.size(); ++k) {
                if (!std::isfinite(v[k])) {
                    throw Error(Errc::InvalidCoefficient,
                                std::string(name) + "[" + std::to_string(k) + "] is not finite");
                }
            }
        };
        finite(b_, "b");
        finite(a_, "a");
        const std::size_t n = std::max(b_.empty() ? 0 : b_.size() - 1, a_.size());
        b_.resize(n + 1, T{0});
        a_.resize(n, T{0});
    }

    [[nodiscard]] std::size_t order() const noexcept { return a_.size(); }
    [[nodiscard]] std::span<const T> b() const noexcept { return b_; }
    /// a_1..a_N; a()[j-1] is a_j.
    [[nodiscard]] std::span<const T> a() const noexcept { return a_; }

    [[nodiscard]] bool is_fir() const noexcept {
        return std::ranges::all_of(a_, [](T v) { return v == T{0}; });
    }
    [[nodiscard]] bool is_all_pole() const noexcept {
        return b_[0] == T{1} && std::all_of(b_.begin() + 1, b_.end(), [](T v) { return v == T{0}; });
    }

    friend bool operator==(const FilterCoefficients&, const FilterCoefficients&) = default;

private:
    std::vector<T> b_;
    std::vector<T> a_;
};

/**
 * Normalizes raw coefficient lists. When `leading_a0` is set, a_raw[0] is a_0
 * and every coefficient is divided by it before it is dropped.
 */
template <std::floating_point T>
FilterCoefficients<T> normalize_coefficients(std::vector<T> b_raw, std::vector<T> a_raw, bool leading_a0 = false) {
    if (b_raw.empty() && a_raw.empty()) {
        throw Error(Errc::EmptyFilter, "no coefficients given");
    }
    if (leading_a0) {
        if (a_raw.empty()) {
            throw Error(Errc::DegenerateFilter, "a_0 flagged present but a is empty");
        }
        const T a0 = a_raw.front();
        if (!std::isfinite(a0)) {
            throw Error(Errc::InvalidCoefficient, "a_0 is not finite");
        }
        if (a0 == T{0}) {
            throw Error(Errc::DegenerateFilter, "a_0 must be nonzero");
        }
        a_raw.erase(a_raw.begin());
        for (auto& v : b_raw) {
            v /= a0;
        }
        for (auto& v : a_raw) {
            v /= a0;
        }
    }
    return FilterCoefficients<T>(std::move(b_raw), std::move(a_raw));
}

namespace detail {

// r: drop the current-input component; i: keep only it.
template <std::floating_point T>
std::pair<LinearMap<T>, LinearMap<T>> restriction_and_input(std::size_t n) {
    LinearMap<T> r(n, n + 1);
    for (std::size_t k = 0; k < n; ++k) {
        r(k, k) = T{1};
    }
    LinearMap<T> i(1, n + 1);
    i(0, n) = T{1};
    return {std::move(r), std::move(i)};
}

// s: shift memory left and append the new internal value
//    x + sum_j -a_j x_(N-j); with a = 0 this is the plain shift matrix.
template <std::floating_point T>
LinearMap<T> feedback_shift(const FilterCoefficients<T>& c) {
    const std::size_t n = c.order();
    LinearMap<T> s(n, n + 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        s(k, k + 1) = T{1};
    }
    if (n > 0) {
        for (std::size_t j = 1; j <= n; ++j) {
            s(n - 1, n - j) = -c.a()[j - 1];
        }
        s(n - 1, n) = T{1};
    }
    return s;
}

// o: y = b_0 w + sum_i b_i x_(N-i), with w = x + sum_j -a_j x_(N-j) the new
// internal value, expanded into one linear row.
template <std::floating_point T>
LinearMap<T> feedforward_output(const FilterCoefficients<T>& c) {
    const std::size_t n = c.order();
    const auto b = c.b();
    const auto a = c.a();
    LinearMap<T> o(1, n + 1);
    for (std::size_t i = 1; i <= n; ++i) {
        o(0, n - i) = b[i] - b[0] * a[i - 1];
    }
    o(0, n) = b[0];
    return o;
}

} // namespace detail

/// Feedforward-only diagram: s is the shift matrix, o the weighted tap sum.
template <std::floating_point T>
SheafDiagram<T> fir_maps(const FilterCoefficients<T>& c) {
    if (!c.is_fir()) {
        throw Error(Errc::NotFIR, "feedback coefficients must all be zero");
    }
    auto [r, i] = detail::restriction_and_input<T>(c.order());
    return SheafDiagram<T>(detail::feedback_shift(c), std::move(r), std::move(i), detail::feedforward_output(c));
}

/// Feedback-only diagram (b = 1, 0, ..., 0); the output is the new internal value.
template <std::floating_point T>
SheafDiagram<T> allpole_maps(const FilterCoefficients<T>& c) {
    if (!c.is_all_pole()) {
        throw Error(Errc::NotAllPole, "feedforward coefficients must be (1, 0, ..., 0)");
    }
    if (c.order() == 0) {
        throw Error(Errc::NotAllPole, "an all-pole filter needs order at least 1");
    }
    auto [r, i] = detail::restriction_and_input<T>(c.order());
    auto s = detail::feedback_shift(c);
    LinearMap<T> o(1, c.order() + 1);
    for (std::size_t k = 0; k <= c.order(); ++k) {
        o(0, k) = s(c.order() - 1, k);
    }
    return SheafDiagram<T>(std::move(s), std::move(r), std::move(i), std::move(o));
}

/// Direct Form II: the all-pole recursion followed by the FIR taps on the shared state.
template <std::floating_point T>
SheafDiagram<T> polezero_maps(const FilterCoefficients<T>& c) {
    auto [r, i] = detail::restriction_and_input<T>(c.order());
    return SheafDiagram<T>(detail::feedback_shift(c), std::move(r), std::move(i), detail::feedforward_output(c));
}

/// x' = A x + B u, y = C x + D u in canonical controllability form.
template <std::floating_point T>
struct StateSpaceModel {
    LinearMap<T> A;
    LinearMap<T> B;
    LinearMap<T> C;
    LinearMap<T> D;

    [[nodiscard]] std::size_t order() const noexcept { return A.rows(); }

    friend bool operator==(const StateSpaceModel&, const StateSpaceModel&) = default;
};

template <std::floating_point T>
StateSpaceModel<T> state_space(const FilterCoefficients<T>& c) {
    const std::size_t n = c.order();
    if (n == 0) {
        throw Error(Errc::NoState, "a pure gain has no state-space realization");
    }
    const auto a = c.a();
    const auto b = c.b();
    StateSpaceModel<T> m{LinearMap<T>(n, n), LinearMap<T>(n, 1), LinearMap<T>(1, n), LinearMap<T>(1, 1)};
    for (std::size_t k = 0; k + 1 < n; ++k) {
        m.A(k, k + 1) = T{1};
    }
    // Column k (0-based) of the last row carries -a_(N-k).
    for (std::size_t k = 0; k < n; ++k) {
        m.A(n - 1, k) = -a[n - k - 1];
        m.C(0, k) = b[n - k] - b[0] * a[n - k - 1];
    }
    m.B(n - 1, 0) = T{1};
    m.D(0, 0) = b[0];
    return m;
}

} // namespace topofilt

#endif // TOPOFILT_FILTERS_HPP
