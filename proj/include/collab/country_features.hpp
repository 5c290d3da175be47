#pragma once

#include "collab/graph_io.hpp"

#include <span>
#include <string>
#include <vector>

namespace collab {

/// The two scatter axes for one country, plus the raw weights behind them.
struct CountryFeatures {
    CountryId country;
    Weight self_weight = 0;
    Weight external_weight = 0;
    std::size_t distinct_partners = 0;
    double external_share_pct = 0.0;
};

/// Cut-points splitting the (distinct partners, external share) plane into quadrants.
struct QuadrantThresholds {
    double share_cut;
    double partners_cut;
};

/// "Top" is high external share, "Right" is many distinct partners.
enum class Quadrant { BottomLeft, BottomRight, TopLeft, TopRight };

const char* to_string(Quadrant q);

struct ExtremesReport {
    CountryId top_right;
    CountryId bottom_left;
    std::vector<CountryId> fully_external;
};

/// One record per node, sorted by label. Throws Error(EmptyGraph).
std::vector<CountryFeatures> compute_features(const CollaborationGraph& graph);

/// Points exactly on a cut go to the lower/left side.
Quadrant classify_quadrant(double share_pct, double partners, const QuadrantThresholds& thresholds);
Quadrant classify_quadrant(const CountryFeatures& features, const QuadrantThresholds& thresholds);

/// Per-axis medians. Throws Error(EmptyFeatureList).
QuadrantThresholds median_thresholds(std::span<const CountryFeatures> features);

/// Median of an unsorted list; even lengths average the two middle values.
double median(std::vector<double> values);

/// Lexicographic extremes on (distinct_partners, external_share_pct); ties go
/// to the smallest label. Throws Error(EmptyFeatureList).
ExtremesReport extremes(std::span<const CountryFeatures> features);

inline constexpr std::string_view kFeaturesCsvHeader =
    "country,self_weight,external_weight,distinct_partners,external_share_pct";

std::string write_features_csv(std::span<const CountryFeatures> features);

} // namespace collab
