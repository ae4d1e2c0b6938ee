#ifndef TOPOFILT_SHEAF_HPP
#define TOPOFILT_SHEAF_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "simplicial.hpp"

namespace topofilt {

/// Dense rows x cols matrix acting on stalk vectors. Zero-sized maps are legal.
template <std::floating_point T>
class LinearMap {
public:
    LinearMap() = default;

    LinearMap(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols, T{0}) {}

    LinearMap(std::size_t rows, std::size_t cols, std::vector<T> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_) {
            throw Error(Errc::ShapeError, "linear map " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                                              " given " + std::to_string(entries_.size()) + " entries");
        }
    }

    static LinearMap from_rows(std::initializer_list<std::initializer_list<T>> rows) {
        const std::size_t n_rows = rows.size();
        const std::size_t n_cols = n_rows == 0 ? 0 : rows.begin()->size();
        std::vector<T> entries;
        entries.reserve(n_rows * n_cols);
        for (const auto& row : rows) {
            if (row.size() != n_cols) {
                throw Error(Errc::ShapeError, "ragged rows in linear map literal");
            }
            entries.insert(entries.end(), row.begin(), row.end());
        }
        return LinearMap(n_rows, n_cols, std::move(entries));
    }

    static LinearMap identity(std::size_t n) {
        LinearMap m(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            m(k, k) = T{1};
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t r, std::size_t c) noexcept { return entries_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const noexcept { return entries_[r * cols_ + c]; }

    [[nodiscard]] std::span<const T> row(std::size_t r) const noexcept {
        return std::span<const T>(entries_).subspan(r * cols_, cols_);
    }
    [[nodiscard]] std::span<const T> entries() const noexcept { return entries_; }

    /// Writes m*v into out. Each row is summed in increasing column order.
    void apply_into(std::span<const T> v, std::span<T> out) const {
        if (v.size() != cols_ || out.size() != rows_) {
            throw Error(Errc::ShapeError, "cannot apply " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                                              " map to vector of length " + std::to_string(v.size()));
        }
        for (std::size_t r = 0; r < rows_; ++r) {
            T acc{0};
            const T* coeffs = entries_.data() + r * cols_;
            for (std::size_t c = 0; c < cols_; ++c) {
                acc += coeffs[c] * v[c];
            }
            out[r] = acc;
        }
    }

    [[nodiscard]] std::vector<T> apply(std::span<const T> v) const {
        std::vector<T> out(rows_);
        apply_into(v, out);
        return out;
    }

    friend bool operator==(const LinearMap&, const LinearMap&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> entries_;
};

template <std::floating_point T>
std::vector<T> apply_map(const LinearMap<T>& m, std::span<const T> v) {
    return m.apply(v);
}

/**
 * The per-simplex structure shared by every vertex and edge of a line complex:
 *
 *        0   <-      S_i     ->   0
 *        ^            ^ i         ^
 *   S_c  <-r-   S_s (vertex)  -s->  S_c
 *        v            v o         v
 *        0   <-      S_o     ->   0
 *
 * S_s has dimension N+1 (N memory components followed by the current input),
 * S_c has dimension N, S_i = S_o = 1. Input and output stalks over edges are
 * the zero space and are not stored.
 */
template <std::floating_point T>
class SheafDiagram {
public:
    SheafDiagram(LinearMap<T> s, LinearMap<T> r, LinearMap<T> i, LinearMap<T> o)
        : s_(std::move(s)), r_(std::move(r)), i_(std::move(i)), o_(std::move(o)) {
        const std::size_t state = s_.cols();
        if (state == 0) {
            throw Error(Errc::ShapeError, "state stalk must have dimension at least 1");
        }
        const std::size_t consistency = state - 1;
        auto check = [](const LinearMap<T>& m, std::size_t rows, std::size_t cols, const char* name) {
            if (m.rows() != rows || m.cols() != cols) {
                throw Error(Errc::ShapeError, std::string("map ") + name + " must be " + std::to_string(rows) + "x" +
                                                  std::to_string(cols) + ", got " + std::to_string(m.rows()) + "x" +
                                                  std::to_string(m.cols()));
            }
        };
        check(s_, consistency, state, "s");
        check(r_, consistency, state, "r");
        check(i_, 1, state, "i");
        check(o_, 1, state, "o");
    }

    [[nodiscard]] std::size_t order() const noexcept { return s_.cols() - 1; }
    [[nodiscard]] std::size_t state_dim() const noexcept { return s_.cols(); }
    [[nodiscard]] std::size_t consistency_dim() const noexcept { return s_.rows(); }
    [[nodiscard]] static constexpr std::size_t input_dim() noexcept { return 1; }
    [[nodiscard]] static constexpr std::size_t output_dim() noexcept { return 1; }

    [[nodiscard]] const LinearMap<T>& map_s() const noexcept { return s_; }
    [[nodiscard]] const LinearMap<T>& map_r() const noexcept { return r_; }
    [[nodiscard]] const LinearMap<T>& map_i() const noexcept { return i_; }
    [[nodiscard]] const LinearMap<T>& map_o() const noexcept { return o_; }

    friend bool operator==(const SheafDiagram&, const SheafDiagram&) = default;

private:
    LinearMap<T> s_;
    LinearMap<T> r_;
    LinearMap<T> i_;
    LinearMap<T> o_;
};

/// State vectors over vertices and consistency vectors over edges, stored flat.
template <std::floating_point T>
class StateSection {
public:
    StateSection() = default;

    StateSection(std::size_t vertex_count, std::size_t state_dim, std::size_t consistency_dim)
        : vertex_count_(vertex_count),
          state_dim_(state_dim),
          consistency_dim_(consistency_dim),
          vertex_data_(vertex_count * state_dim, T{0}),
          edge_data_(edge_count() * consistency_dim, T{0}) {}

    [[nodiscard]] std::size_t vertex_count() const noexcept { return vertex_count_; }
    [[nodiscard]] std::size_t edge_count() const noexcept { return vertex_count_ == 0 ? 0 : vertex_count_ - 1; }
    [[nodiscard]] std::size_t state_dim() const noexcept { return state_dim_; }
    [[nodiscard]] std::size_t consistency_dim() const noexcept { return consistency_dim_; }

    [[nodiscard]] std::span<T> vertex_state(std::size_t t) {
        return std::span<T>(vertex_data_).subspan(t * state_dim_, state_dim_);
    }
    [[nodiscard]] std::span<const T> vertex_state(std::size_t t) const {
        return std::span<const T>(vertex_data_).subspan(t * state_dim_, state_dim_);
    }
    [[nodiscard]] std::span<T> edge_value(std::size_t t) {
        return std::span<T>(edge_data_).subspan(t * consistency_dim_, consistency_dim_);
    }
    [[nodiscard]] std::span<const T> edge_value(std::size_t t) const {
        return std::span<const T>(edge_data_).subspan(t * consistency_dim_, consistency_dim_);
    }

    /// Total scalars held; vertex_count * state_dim + edge_count * consistency_dim.
    [[nodiscard]] std::size_t storage_size() const noexcept { return vertex_data_.size() + edge_data_.size(); }

    friend bool operator==(const StateSection&, const StateSection&) = default;

private:
    std::size_t vertex_count_ = 0;
    std::size_t state_dim_ = 0;
    std::size_t consistency_dim_ = 0;
    std::vector<T> vertex_data_;
    std::vector<T> edge_data_;
};

enum class Side { Left, Right };

template <std::floating_point T>
struct Violation {
    std::size_t edge = 0;
    Side side = Side::Left;
    std::vector<T> residual;
    T max_abs_residual{0};
};

template <std::floating_point T>
struct ViolationReport {
    std::vector<Violation<T>> violations;

    [[nodiscard]] bool consistent() const noexcept { return violations.empty(); }
};

namespace detail {

template <std::floating_point T>
void check_section_shape(const SheafDiagram<T>& d, const StateSection<T>& sec) {
    if (sec.state_dim() != d.state_dim() || sec.consistency_dim() != d.consistency_dim()) {
        throw Error(Errc::ShapeError, "section stalks (" + std::to_string(sec.state_dim()) + ", " +
                                          std::to_string(sec.consistency_dim()) + ") do not match diagram (" +
                                          std::to_string(d.state_dim()) + ", " +
                                          std::to_string(d.consistency_dim()) + ")");
    }
}

template <std::floating_point T>
void check_section_complex(const LineComplex& c, const StateSection<T>& sec) {
    if (sec.vertex_count() != c.vertex_count()) {
        throw Error(Errc::ShapeError, "section covers " + std::to_string(sec.vertex_count()) +
                                          " vertices, complex has " + std::to_string(c.vertex_count()));
    }
}

} // namespace detail

/**
 * Checks the gluing equations s(state_t) = edge_t = r(state_(t+1)) on every
 * edge, in the infinity norm. A section with no edges is vacuously consistent.
 */
template <std::floating_point T>
ViolationReport<T> verify_section(const SheafDiagram<T>& d, const StateSection<T>& sec, T tol) {
    detail::check_section_shape(d, sec);
    ViolationReport<T> report;
    std::vector<T> image(d.consistency_dim());
    auto check = [&](const LinearMap<T>& m, std::span<const T> state, std::size_t edge, Side side) {
        m.apply_into(state, image);
        const auto value = sec.edge_value(edge);
        std::vector<T> residual(image.size());
        T worst{0};
        bool bad = false;
        for (std::size_t k = 0; k < image.size(); ++k) {
            residual[k] = image[k] - value[k];
            const T mag = std::abs(residual[k]);
            // NaN residuals never compare <= tol and are reported.
            if (!(mag <= tol)) {
                bad = true;
            }
            worst = std::isnan(mag) || mag > worst ? mag : worst;
        }
        if (bad) {
            report.violations.push_back({edge, side, std::move(residual), worst});
        }
    };
    for (std::size_t e = 0; e < sec.edge_count(); ++e) {
        check(d.map_s(), sec.vertex_state(e), e, Side::Left);
        check(d.map_r(), sec.vertex_state(e + 1), e, Side::Right);
    }
    return report;
}

template <std::floating_point T>
ViolationReport<T> verify_section(const LineComplex& c, const SheafDiagram<T>& d, const StateSection<T>& sec,
                                  T tol) {
    detail::check_section_complex(c, sec);
    return verify_section(d, sec, tol);
}

/// Builds a section from vertex states, completing each edge as s(state_t).
template <std::floating_point T>
StateSection<T> section_from_states(const LineComplex& c, const SheafDiagram<T>& d,
                                    std::span<const std::vector<T>> vertex_states) {
    if (vertex_states.size() != c.vertex_count()) {
        throw Error(Errc::ShapeError, "expected " + std::to_string(c.vertex_count()) + " vertex states, got " +
                                          std::to_string(vertex_states.size()));
    }
    StateSection<T> sec(c.vertex_count(), d.state_dim(), d.consistency_dim());
    for (std::size_t t = 0; t < vertex_states.size(); ++t) {
        if (vertex_states[t].size() != d.state_dim()) {
            throw Error(Errc::ShapeError, "vertex state " + std::to_string(t) + " has length " +
                                              std::to_string(vertex_states[t].size()) + ", expected " +
                                              std::to_string(d.state_dim()));
        }
        std::ranges::copy(vertex_states[t], sec.vertex_state(t).begin());
    }
    for (std::size_t e = 0; e < sec.edge_count(); ++e) {
        d.map_s().apply_into(sec.vertex_state(e), sec.edge_value(e));
    }
    return sec;
}

} // namespace topofilt

#endif // TOPOFILT_SHEAF_HPP
