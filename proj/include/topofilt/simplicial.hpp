#ifndef TOPOFILT_SIMPLICIAL_HPP
#define TOPOFILT_SIMPLICIAL_HPP

#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace topofilt {

enum class Dim : std::uint8_t { Vertex = 0, Edge = 1 };

/// A 0- or 1-simplex addressed by its position along the chain.
struct SimplexId {
    Dim dimension = Dim::Vertex;
    std::size_t index = 0;

    static constexpr SimplexId vertex(std::size_t i) noexcept { return {Dim::Vertex, i}; }
    static constexpr SimplexId edge(std::size_t i) noexcept { return {Dim::Edge, i}; }

    friend constexpr auto operator<=>(const SimplexId&, const SimplexId&) = default;
};

inline std::string to_string(const SimplexId& id) {
    return (id.dimension == Dim::Vertex ? "v" : "e") + std::to_string(id.index);
}

/**
 * An unbranched chain of vertices v0 - v1 - ... - v(n-1), where edge e_t joins
 * v_t and v_(t+1). Traversal direction is increasing index.
 *
 * Optional per-vertex timestamps may be attached. They are annotation only:
 * nothing in the library reads them for computation.
 */
class LineComplex {
public:
    static LineComplex build(std::size_t n_vertices,
                             std::optional<std::vector<double>> metric_labels = std::nullopt) {
        if (n_vertices == 0) {
            throw Error(Errc::EmptyComplex, "a line complex needs at least one vertex");
        }
        if (metric_labels) {
            const auto& labels = *metric_labels;
            if (labels.size() != n_vertices) {
                throw Error(Errc::InvalidMetric, "expected " + std::to_string(n_vertices) +
                                                     " labels, got " + std::to_string(labels.size()));
            }
            for (std::size_t t = 0; t < labels.size(); ++t) {
                if (!std::isfinite(labels[t])) {
                    throw Error(Errc::InvalidMetric, "label " + std::to_string(t) + " is not finite");
                }
                if (t > 0 && !(labels[t - 1] < labels[t])) {
                    throw Error(Errc::InvalidMetric,
                                "labels must be strictly increasing (index " + std::to_string(t) + ")");
                }
            }
        }
        return LineComplex(n_vertices, std::move(metric_labels));
    }

    [[nodiscard]] std::size_t vertex_count() const noexcept { return vertices_; }
    [[nodiscard]] std::size_t edge_count() const noexcept { return vertices_ - 1; }

    [[nodiscard]] bool contains(const SimplexId& id) const noexcept {
        return id.dimension == Dim::Vertex ? id.index < vertex_count() : id.index < edge_count();
    }

    [[nodiscard]] bool has_metric() const noexcept { return labels_.has_value(); }
    [[nodiscard]] std::span<const double> metric_labels() const noexcept {
        return labels_ ? std::span<const double>(*labels_) : std::span<const double>{};
    }

    /// Endpoints of an edge in traversal order.
    [[nodiscard]] std::array<SimplexId, 2> boundary(const SimplexId& e) const {
        if (e.dimension != Dim::Edge || !contains(e)) {
            throw Error(Errc::UnknownSimplex, to_string(e) + " is not an edge of this complex");
        }
        return {SimplexId::vertex(e.index), SimplexId::vertex(e.index + 1)};
    }

    /// Edges incident to a vertex, ordered [left, right]. Endpoints have one.
    [[nodiscard]] std::vector<SimplexId> face(const SimplexId& v) const {
        if (v.dimension != Dim::Vertex || !contains(v)) {
            throw Error(Errc::UnknownSimplex, to_string(v) + " is not a vertex of this complex");
        }
        std::vector<SimplexId> edges;
        edges.reserve(2);
        if (v.index > 0) {
            edges.push_back(SimplexId::edge(v.index - 1));
        }
        if (v.index < edge_count()) {
            edges.push_back(SimplexId::edge(v.index));
        }
        return edges;
    }

    [[nodiscard]] bool directly_connected(const SimplexId& p, const SimplexId& q) const {
        for (const auto& id : {p, q}) {
            if (!contains(id)) {
                throw Error(Errc::UnknownSimplex, to_string(id) + " is not in this complex");
            }
        }
        if (p.dimension == q.dimension) {
            return false;
        }
        const auto& v = p.dimension == Dim::Vertex ? p : q;
        const auto& e = p.dimension == Dim::Edge ? p : q;
        return v.index == e.index || v.index == e.index + 1;
    }

private:
    LineComplex(std::size_t n, std::optional<std::vector<double>> labels)
        : vertices_(n), labels_(std::move(labels)) {}

    std::size_t vertices_;
    std::optional<std::vector<double>> labels_;
};

inline LineComplex build_line_complex(std::size_t n_vertices,
                                      std::optional<std::vector<double>> metric_labels = std::nullopt) {
    return LineComplex::build(n_vertices, std::move(metric_labels));
}

} // namespace topofilt

#endif // TOPOFILT_SIMPLICIAL_HPP
