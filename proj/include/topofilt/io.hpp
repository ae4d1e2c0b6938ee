#ifndef TOPOFILT_IO_HPP
#define TOPOFILT_IO_HPP

// Text formats used by the command-line tool.
//
// Coefficient file:
//     b: <b_0> <b_1> ... <b_N>
//     a: <a_1> ... <a_N>          (optional; a_0 = 1 is implied, not written)
//   Blank lines and lines starting with '#' are ignored.
//
// Signal CSV: one sample per line, optionally preceded by the header `sample`.
//
// Section file:
//     section <vertex_count> <state_dim> <consistency_dim>
//     v <t> <state_dim values>           one line per vertex, t ascending
//     e <t> <consistency_dim values>     one line per edge, t ascending
//
// Numbers are written with 17 significant digits so every double survives a
// write/read round trip bit-exactly.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "error.hpp"
#include "filters.hpp"
#include "sheaf.hpp"

namespace topofilt::io {

inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline std::string at_line(std::string_view source, std::size_t line) {
    return std::string(source) + ":" + std::to_string(line) + ": ";
}

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < s.size()) {
        pos = s.find_first_not_of(" \t\r,", pos);
        if (pos == std::string_view::npos) {
            break;
        }
        const auto end = s.find_first_of(" \t\r,", pos);
        tokens.push_back(s.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
        pos = end == std::string_view::npos ? s.size() : end;
    }
    return tokens;
}

inline std::optional<double> to_double(std::string_view token) {
    if (!token.empty() && token.front() == '+') {
        token.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

inline double parse_double(std::string_view token, std::string_view source, std::size_t line) {
    const auto v = to_double(token);
    if (!v) {
        throw Error(Errc::ParseError, at_line(source, line) + "'" + std::string(token) + "' is not a finite number");
    }
    return *v;
}

inline std::size_t parse_index(std::string_view token, std::string_view source, std::size_t line) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw Error(Errc::ParseError, at_line(source, line) + "'" + std::string(token) + "' is not an index");
    }
    return value;
}

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::ParseError, "cannot open '" + path + "' for reading");
    }
    return in;
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw Error(Errc::ParseError, "cannot open '" + path + "' for writing");
    }
    return out;
}

} // namespace detail

struct RawCoefficients {
    std::vector<double> b;
    std::vector<double> a;
};

inline RawCoefficients parse_coefficients(std::istream& in, std::string_view source = "<coefficients>") {
    RawCoefficients raw;
    bool seen_b = false;
    bool seen_a = false;
    std::string text;
    for (std::size_t line = 1; std::getline(in, text); ++line) {
        const auto body = detail::trim(text);
        if (body.empty() || body.front() == '#') {
            continue;
        }
        const auto colon = body.find(':');
        if (colon == std::string_view::npos) {
            throw Error(Errc::ParseError, detail::at_line(source, line) + "expected 'b:' or 'a:'");
        }
        const auto key = detail::trim(body.substr(0, colon));
        std::vector<double>* target = nullptr;
        if (key == "b") {
            if (seen_b) {
                throw Error(Errc::ParseError, detail::at_line(source, line) + "duplicate 'b:' line");
            }
            seen_b = true;
            target = &raw.b;
        } else if (key == "a") {
            if (seen_a) {
                throw Error(Errc::ParseError, detail::at_line(source, line) + "duplicate 'a:' line");
            }
            seen_a = true;
            target = &raw.a;
        } else {
            throw Error(Errc::ParseError, detail::at_line(source, line) + "unknown key '" + std::string(key) + "'");
        }
        for (const auto token : detail::split_ws(body.substr(colon + 1))) {
            target->push_back(detail::parse_double(token, source, line));
        }
    }
    if (!seen_b) {
        throw Error(Errc::ParseError, std::string(source) + ": missing 'b:' line");
    }
    return raw;
}

inline FilterCoefficients<double> read_coefficients(const std::string& path) {
    auto in = detail::open_input(path);
    auto raw = parse_coefficients(in, path);
    return normalize_coefficients(std::move(raw.b), std::move(raw.a));
}

inline void write_coefficients(std::ostream& out, const FilterCoefficients<double>& c) {
    out << "b:";
    for (const double v : c.b()) {
        out << ' ' << format_number(v);
    }
    out << "\na:";
    for (const double v : c.a()) {
        out << ' ' << format_number(v);
    }
    out << '\n';
}

inline std::vector<double> parse_signal(std::istream& in, std::string_view source = "<signal>") {
    std::vector<double> samples;
    std::string text;
    bool first = true;
    for (std::size_t line = 1; std::getline(in, text); ++line) {
        const auto body = detail::trim(text);
        if (body.empty()) {
            continue;
        }
        if (first && body == "sample") {
            first = false;
            continue;
        }
        first = false;
        samples.push_back(detail::parse_double(body, source, line));
    }
    return samples;
}

inline std::vector<double> read_signal(const std::string& path) {
    auto in = detail::open_input(path);
    return parse_signal(in, path);
}

inline void write_signal(std::ostream& out, std::span<const double> samples) {
    out << "sample\n";
    for (const double v : samples) {
        out << format_number(v) << '\n';
    }
}

inline void write_signal(const std::string& path, std::span<const double> samples) {
    auto out = detail::open_output(path);
    write_signal(out, samples);
}

inline void write_section(std::ostream& out, const StateSection<double>& sec) {
    out << "section " << sec.vertex_count() << ' ' << sec.state_dim() << ' ' << sec.consistency_dim() << '\n';
    for (std::size_t t = 0; t < sec.vertex_count(); ++t) {
        out << "v " << t;
        for (const double v : sec.vertex_state(t)) {
            out << ' ' << format_number(v);
        }
        out << '\n';
    }
    for (std::size_t t = 0; t < sec.edge_count(); ++t) {
        out << "e " << t;
        for (const double v : sec.edge_value(t)) {
            out << ' ' << format_number(v);
        }
        out << '\n';
    }
}

inline void write_section(const std::string& path, const StateSection<double>& sec) {
    auto out = detail::open_output(path);
    write_section(out, sec);
}

inline StateSection<double> parse_section(std::istream& in, std::string_view source = "<section>") {
    std::optional<StateSection<double>> sec;
    std::size_t next_vertex = 0;
    std::size_t next_edge = 0;
    std::string text;
    for (std::size_t line = 1; std::getline(in, text); ++line) {
        const auto body = detail::trim(text);
        if (body.empty() || body.front() == '#') {
            continue;
        }
        const auto tokens = detail::split_ws(body);
        if (!sec) {
            if (tokens.size() != 4 || tokens[0] != "section") {
                throw Error(Errc::ParseError,
                            detail::at_line(source, line) + "expected 'section <vertices> <state_dim> <consistency_dim>'");
            }
            const auto vertices = detail::parse_index(tokens[1], source, line);
            const auto state = detail::parse_index(tokens[2], source, line);
            const auto consistency = detail::parse_index(tokens[3], source, line);
            sec.emplace(vertices, state, consistency);
            continue;
        }
        const bool is_vertex = tokens[0] == "v";
        if (!is_vertex && tokens[0] != "e") {
            throw Error(Errc::ParseError,
                        detail::at_line(source, line) + "unknown record '" + std::string(tokens[0]) + "'");
        }
        if (tokens.size() < 2) {
            throw Error(Errc::ParseError, detail::at_line(source, line) + "missing simplex index");
        }
        const auto index = detail::parse_index(tokens[1], source, line);
        std::span<double> slot;
        if (is_vertex) {
            if (next_edge != 0 || index != next_vertex || index >= sec->vertex_count()) {
                throw Error(Errc::ParseError, detail::at_line(source, line) + "vertex v" + std::to_string(index) +
                                                  " out of order or out of range");
            }
            slot = sec->vertex_state(next_vertex++);
        } else {
            if (next_vertex != sec->vertex_count() || index != next_edge || index >= sec->edge_count()) {
                throw Error(Errc::ParseError, detail::at_line(source, line) + "edge e" + std::to_string(index) +
                                                  " out of order or out of range");
            }
            slot = sec->edge_value(next_edge++);
        }
        if (tokens.size() - 2 != slot.size()) {
            throw Error(Errc::ParseError, detail::at_line(source, line) + "expected " + std::to_string(slot.size()) +
                                              " values, got " + std::to_string(tokens.size() - 2));
        }
        for (std::size_t k = 0; k < slot.size(); ++k) {
            slot[k] = detail::parse_double(tokens[k + 2], source, line);
        }
    }
    if (!sec) {
        throw Error(Errc::ParseError, std::string(source) + ": missing 'section' header");
    }
    if (next_vertex != sec->vertex_count() || next_edge != sec->edge_count()) {
        throw Error(Errc::ParseError, std::string(source) + ": truncated section (" + std::to_string(next_vertex) +
                                          " vertices, " + std::to_string(next_edge) + " edges read)");
    }
    return std::move(*sec);
}

inline StateSection<double> read_section(const std::string& path) {
    auto in = detail::open_input(path);
    return parse_section(in, path);
}

inline void write_map(std::ostream& out, std::string_view name, const LinearMap<double>& m) {
    out << name << " (" << m.rows() << "x" << m.cols() << ")\n";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out << " ";
        for (const double v : m.row(r)) {
            out << ' ' << format_number(v);
        }
        out << '\n';
    }
}

inline void describe(std::ostream& out, const SheafDiagram<double>& d) {
    out << "order " << d.order() << '\n'
        << "state_dim " << d.state_dim() << '\n'
        << "consistency_dim " << d.consistency_dim() << '\n'
        << "input_dim " << d.input_dim() << '\n'
        << "output_dim " << d.output_dim() << '\n';
    write_map(out, "map_s", d.map_s());
    write_map(out, "map_r", d.map_r());
    write_map(out, "map_i", d.map_i());
    write_map(out, "map_o", d.map_o());
}

} // namespace topofilt::io

#endif // TOPOFILT_IO_HPP
