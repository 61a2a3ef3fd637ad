#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace curvekit {

enum class ErrorCode {
    ParamOutOfDomain,
    OrderTooHigh,
    RegularityLost,
    FrameNotOrthonormal,
    CurvatureSignViolation,
    RankDeficient,
    JetTooShort,
    DimensionMismatch,
    InsufficientSamples,
    NotUnitSpeed,
    OrderExceedsRank,
    HypothesisViolated,
    ClosedFormResidualFailure,
    GridMismatch,
    SingularPoint,
    CaseUnsupported,
    CurvatureZero,
    DegenerateEvolute,
    CmZero,
    FocalZero,
    CorpusIncomplete,
    ParseError,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Domain error carrying the name of the violated contract.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace curvekit
