// error.hpp: error kinds shared by every module

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nonrecip {

enum class ErrorKind {
    SingularMatrix,
    NotHermitian,
    NoConvergence,
    InvalidParams,
    UnequalKappas,
    InvalidRatio,
    PoleAtFrequency,
    NegativeProbability,
    ZeroGain,
    NoCoherentPath,
    Unstable,
    NoFeasiblePoint,
    InvalidAxis,
    ParseError,
    ValidationError,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace nonrecip
