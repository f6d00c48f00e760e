#include "nonrecip/error.hpp"

namespace nonrecip {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::SingularMatrix: return "SingularMatrix";
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::InvalidParams: return "InvalidParams";
        case ErrorKind::UnequalKappas: return "UnequalKappas";
        case ErrorKind::InvalidRatio: return "InvalidRatio";
        case ErrorKind::PoleAtFrequency: return "PoleAtFrequency";
        case ErrorKind::NegativeProbability: return "NegativeProbability";
        case ErrorKind::ZeroGain: return "ZeroGain";
        case ErrorKind::NoCoherentPath: return "NoCoherentPath";
        case ErrorKind::Unstable: return "Unstable";
        case ErrorKind::NoFeasiblePoint: return "NoFeasiblePoint";
        case ErrorKind::InvalidAxis: return "InvalidAxis";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ValidationError: return "ValidationError";
    }
    return "Error";
}

}  // namespace nonrecip
