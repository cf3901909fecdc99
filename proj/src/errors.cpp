#include "sensint/errors.hpp"

namespace sensint {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NoRoots: return "NoRoots";
        case ErrorCode::RootFindingFailed: return "RootFindingFailed";
        case ErrorCode::PoleOnAxis: return "PoleOnAxis";
        case ErrorCode::ImproperSystem: return "ImproperSystem";
        case ErrorCode::DegeneratePlant: return "DegeneratePlant";
        case ErrorCode::MarginallyStableLoop: return "MarginallyStableLoop";
        case ErrorCode::InvalidBlaschkeFactor: return "InvalidBlaschkeFactor";
        case ErrorCode::DegenerateCompensation: return "DegenerateCompensation";
        case ErrorCode::UnresolvedClosedLoopPoles: return "UnresolvedClosedLoopPoles";
        case ErrorCode::AxisZeroDetected: return "AxisZeroDetected";
        case ErrorCode::SingularCoincidence: return "SingularCoincidence";
        case ErrorCode::NonconvergentIntegral: return "NonconvergentIntegral";
        case ErrorCode::NoCrossover: return "NoCrossover";
        case ErrorCode::LowFrequencyAmplification: return "LowFrequencyAmplification";
        case ErrorCode::ConditionNotMet: return "ConditionNotMet";
        case ErrorCode::InvalidTruncation: return "InvalidTruncation";
        case ErrorCode::UnknownCase: return "UnknownCase";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace sensint
