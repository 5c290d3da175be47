#include "collab/error.hpp"

namespace collab {

const char* to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::MissingHeader: return "MissingHeader";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::EmptyCountryLabel: return "EmptyCountryLabel";
    case ErrorCode::TooFewCountries: return "TooFewCountries";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::EmptyFeatureList: return "EmptyFeatureList";
    case ErrorCode::EmptyPointList: return "EmptyPointList";
    case ErrorCode::TooFewDistinctPoints: return "TooFewDistinctPoints";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::NoCentroids: return "NoCentroids";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NonPositiveStep: return "NonPositiveStep";
    case ErrorCode::NonPositiveHorizon: return "NonPositiveHorizon";
    case ErrorCode::EmptyTrajectory: return "EmptyTrajectory";
    case ErrorCode::DegenerateRates: return "DegenerateRates";
    }
    return "Unknown";
}

namespace {

std::string decorate(ErrorCode code, const std::string& message, std::optional<std::size_t> line)
{
    std::string out = to_string(code);
    if (line) {
        out += " at line " + std::to_string(*line);
    }
    out += ": " + message;
    return out;
}

} // namespace

Error::Error(ErrorCode code, const std::string& message, std::optional<std::size_t> line)
    : std::runtime_error(decorate(code, message, line))
    , code_(code)
    , line_(line)
{
}

} // namespace collab
