#include "curvekit/error.hpp"

namespace curvekit {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::ParamOutOfDomain: return "ParamOutOfDomain";
    case ErrorCode::OrderTooHigh: return "OrderTooHigh";
    case ErrorCode::RegularityLost: return "RegularityLost";
    case ErrorCode::FrameNotOrthonormal: return "FrameNotOrthonormal";
    case ErrorCode::CurvatureSignViolation: return "CurvatureSignViolation";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::JetTooShort: return "JetTooShort";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::NotUnitSpeed: return "NotUnitSpeed";
    case ErrorCode::OrderExceedsRank: return "OrderExceedsRank";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::ClosedFormResidualFailure: return "ClosedFormResidualFailure";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::CaseUnsupported: return "CaseUnsupported";
    case ErrorCode::CurvatureZero: return "CurvatureZero";
    case ErrorCode::DegenerateEvolute: return "DegenerateEvolute";
    case ErrorCode::CmZero: return "CmZero";
    case ErrorCode::FocalZero: return "FocalZero";
    case ErrorCode::CorpusIncomplete: return "CorpusIncomplete";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace curvekit
