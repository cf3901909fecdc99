#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sensint {

enum class ErrorCode {
    InvalidArgument,
    NoRoots,
    RootFindingFailed,
    PoleOnAxis,
    ImproperSystem,
    DegeneratePlant,
    MarginallyStableLoop,
    InvalidBlaschkeFactor,
    DegenerateCompensation,
    UnresolvedClosedLoopPoles,
    AxisZeroDetected,
    SingularCoincidence,
    NonconvergentIntegral,
    NoCrossover,
    LowFrequencyAmplification,
    ConditionNotMet,
    InvalidTruncation,
    UnknownCase,
    ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it onto exit codes without
/// string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }
    /// The message without the code prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace sensint
