#ifndef TOPOFILT_ENGINE_HPP
#define TOPOFILT_ENGINE_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstring>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "filters.hpp"
#include "sheaf.hpp"
#include "simplicial.hpp"

namespace topofilt {

template <std::floating_point T>
using Signal = std::vector<T>;

template <std::floating_point T>
struct RunResult {
    Signal<T> output;
    StateSection<T> section;
    std::size_t diagram_order = 0;
};

namespace detail {

template <std::floating_point T>
void check_signal(std::span<const T> samples) {
    for (std::size_t t = 0; t < samples.size(); ++t) {
        if (!std::isfinite(samples[t])) {
            throw Error(Errc::InvalidSignal, "sample " + std::to_string(t) + " is not finite");
        }
    }
}

template <std::floating_point T>
RunResult<T> run_chain(const SheafDiagram<T>& d, std::span<const T> input, std::optional<std::span<const T>> init) {
    check_signal(input);
    const std::size_t n = d.order();
    if (init && init->size() != d.state_dim()) {
        throw Error(Errc::ShapeError, "initial state has length " + std::to_string(init->size()) + ", expected " +
                                          std::to_string(d.state_dim()));
    }
    RunResult<T> result{Signal<T>(input.size()), StateSection<T>(input.size(), d.state_dim(), d.consistency_dim()),
                        n};
    auto& sec = result.section;
    for (std::size_t t = 0; t < input.size(); ++t) {
        auto state = sec.vertex_state(t);
        // Right gluing fixes the memory part: r(state_t) = s(state_(t-1)).
        if (t == 0) {
            if (init) {
                std::copy_n(init->begin(), n, state.begin());
            }
        } else {
            std::ranges::copy(sec.edge_value(t - 1), state.begin());
        }
        // Input constraint i(state_t) = x[t].
        state[n] = input[t];
        d.map_o().apply_into(state, std::span<T>(&result.output[t], 1));
        if (t + 1 < input.size()) {
            d.map_s().apply_into(state, sec.edge_value(t));
        }
    }
    return result;
}

} // namespace detail

/**
 * Runs the filter causally along a chain with one vertex per input sample,
 * producing the global section determined by the input and the initial
 * memory. Zero initial memory when `init_state` is omitted; the last entry
 * of `init_state` is ignored (it is overwritten by input[0]).
 */
template <std::floating_point T>
RunResult<T> run_filter(const SheafDiagram<T>& d, std::span<const T> input,
                        std::optional<std::span<const T>> init_state = std::nullopt) {
    return detail::run_chain(d, input, init_state);
}

/// As above, over an explicitly built complex whose length must match the input.
template <std::floating_point T>
RunResult<T> run_filter(const LineComplex& c, const SheafDiagram<T>& d, std::span<const T> input,
                        std::optional<std::span<const T>> init_state = std::nullopt) {
    if (c.vertex_count() != input.size()) {
        throw Error(Errc::ShapeError, "complex has " + std::to_string(c.vertex_count()) + " vertices but signal has " +
                                          std::to_string(input.size()) + " samples");
    }
    return detail::run_chain(d, input, init_state);
}

/**
 * Reference evaluation of the difference equation with explicit input and
 * output histories (Direct Form I), zero initial history. Written
 * independently of the sheaf maps and used as the oracle for them.
 */
template <std::floating_point T>
Signal<T> direct_form_oracle(const FilterCoefficients<T>& c, std::span<const T> input) {
    detail::check_signal(input);
    const auto b = c.b();
    const auto a = c.a();
    Signal<T> y(input.size());
    for (std::size_t n = 0; n < input.size(); ++n) {
        T acc{0};
        for (std::size_t i = 0; i < b.size() && i <= n; ++i) {
            acc += b[i] * input[n - i];
        }
        for (std::size_t j = 1; j <= a.size() && j <= n; ++j) {
            acc -= a[j - 1] * y[n - j];
        }
        y[n] = acc;
    }
    return y;
}

/// Iterates y_t = C x_t + D u_t, then x_(t+1) = A x_t + B u_t, from x_0 = 0.
template <std::floating_point T>
Signal<T> run_state_space(const StateSpaceModel<T>& m, std::span<const T> input) {
    const std::size_t n = m.A.rows();
    if (n == 0) {
        throw Error(Errc::NoState, "state-space model has no state");
    }
    if (m.A.cols() != n || m.B.rows() != n || m.B.cols() != 1 || m.C.rows() != 1 || m.C.cols() != n ||
        m.D.rows() != 1 || m.D.cols() != 1) {
        throw Error(Errc::ShapeError, "inconsistent A, B, C, D shapes");
    }
    detail::check_signal(input);
    std::vector<T> x(n, T{0});
    std::vector<T> next(n);
    Signal<T> y(input.size());
    for (std::size_t t = 0; t < input.size(); ++t) {
        T out{0};
        for (std::size_t k = 0; k < n; ++k) {
            out += m.C(0, k) * x[k];
        }
        y[t] = out + m.D(0, 0) * input[t];
        for (std::size_t r = 0; r < n; ++r) {
            T acc{0};
            for (std::size_t k = 0; k < n; ++k) {
                acc += m.A(r, k) * x[k];
            }
            next[r] = acc + m.B(r, 0) * input[t];
        }
        x.swap(next);
    }
    return y;
}

template <std::floating_point T>
Signal<T> impulse_response(const SheafDiagram<T>& d, std::size_t length) {
    if (length == 0) {
        throw Error(Errc::ShapeError, "impulse length must be positive");
    }
    Signal<T> impulse(length, T{0});
    impulse[0] = T{1};
    return run_filter<T>(d, impulse).output;
}

template <std::floating_point T>
struct Deviation {
    T max_abs{0};
    /// max_abs divided by the larger peak magnitude of the two signals.
    T max_rel{0};
    bool passed = true;
};

/// Pass when either the absolute or the peak-relative deviation is within tolerance.
template <std::floating_point T>
Deviation<T> compare(std::span<const T> x, std::span<const T> y, T rel_tol, T abs_tol) {
    if (x.size() != y.size()) {
        throw Error(Errc::ShapeError, "cannot compare signals of length " + std::to_string(x.size()) + " and " +
                                          std::to_string(y.size()));
    }
    Deviation<T> dev;
    T peak{0};
    for (std::size_t t = 0; t < x.size(); ++t) {
        const T diff = std::abs(x[t] - y[t]);
        if (std::isnan(diff) || diff > dev.max_abs) {
            dev.max_abs = diff;
        }
        peak = std::max({peak, std::abs(x[t]), std::abs(y[t])});
    }
    dev.max_rel = peak > T{0} ? dev.max_abs / peak : dev.max_abs;
    dev.passed = dev.max_abs <= abs_tol || dev.max_rel <= rel_tol;
    return dev;
}

/// True iff runs over the two annotated complexes give bit-identical outputs.
template <std::floating_point T>
bool metric_invariance_check(const SheafDiagram<T>& d, std::span<const T> input, std::vector<double> labels_a,
                             std::vector<double> labels_b) {
    const auto complex_a = build_line_complex(input.size(), std::move(labels_a));
    const auto complex_b = build_line_complex(input.size(), std::move(labels_b));
    const auto run_a = run_filter(complex_a, d, input);
    const auto run_b = run_filter(complex_b, d, input);
    return run_a.output.size() == run_b.output.size() &&
           std::memcmp(run_a.output.data(), run_b.output.data(), run_a.output.size() * sizeof(T)) == 0;
}

} // namespace topofilt

#endif // TOPOFILT_ENGINE_HPP
