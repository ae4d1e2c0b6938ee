#ifndef TOPOFILT_ERROR_HPP
#define TOPOFILT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace topofilt {

enum class Errc {
    EmptyComplex,
    InvalidMetric,
    UnknownSimplex,
    ShapeError,
    DegenerateFilter,
    EmptyFilter,
    InvalidCoefficient,
    NotFIR,
    NotAllPole,
    NoState,
    InvalidSignal,
    ParseError,
};

constexpr std::string_view to_string(Errc code) noexcept {
    switch (code) {
    case Errc::EmptyComplex: return "EmptyComplex";
    case Errc::InvalidMetric: return "InvalidMetric";
    case Errc::UnknownSimplex: return "UnknownSimplex";
    case Errc::ShapeError: return "ShapeError";
    case Errc::DegenerateFilter: return "DegenerateFilter";
    case Errc::EmptyFilter: return "EmptyFilter";
    case Errc::InvalidCoefficient: return "InvalidCoefficient";
    case Errc::NotFIR: return "NotFIR";
    case Errc::NotAllPole: return "NotAllPole";
    case Errc::NoState: return "NoState";
    case Errc::InvalidSignal: return "InvalidSignal";
    case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a code.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace topofilt

#endif // TOPOFILT_ERROR_HPP
