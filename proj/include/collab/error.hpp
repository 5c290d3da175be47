#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace collab {

enum class ErrorCode {
    // graph_io
    MissingHeader,
    MalformedRow,
    NonPositiveWeight,
    EmptyCountryLabel,
    TooFewCountries,
    // country_features
    EmptyGraph,
    EmptyFeatureList,
    // kmeans_clustering
    EmptyPointList,
    TooFewDistinctPoints,
    InvalidK,
    NoCentroids,
    // growth_dynamics
    InvalidParameter,
    NonPositiveStep,
    NonPositiveHorizon,
    EmptyTrajectory,
    DegenerateRates,
};

const char* to_string(ErrorCode code);

/// Raised by every library operation on a precondition or input violation.
/// Parse errors additionally carry the 1-based line number of the offending row.
class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string& message, std::optional<std::size_t> line = std::nullopt);

    ErrorCode code() const noexcept { return code_; }
    std::optional<std::size_t> line() const noexcept { return line_; }

private:
    ErrorCode code_;
    std::optional<std::size_t> line_;
};

} // namespace collab
