#pragma once

#include "collab/country_features.hpp"
#include "collab/rng.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace collab {

/// (distinct partners, external share) in whatever scale the caller chose.
using Coords = std::array<double, 2>;

struct FeaturePoint {
    CountryId country;
    Coords coords;
};

/// Per-axis mean and population standard deviation (divisor n).
struct StandardizationStats {
    Coords mean{};
    Coords sd{};
};

struct Standardized {
    std::vector<Coords> coords;
    StandardizationStats stats;
};

/// z-scores each axis; a zero-variance axis maps to all zeros.
/// Throws Error(EmptyPointList).
Standardized standardize(std::span<const Coords> points);

/// Inverse of the standardization affine map.
Coords destandardize(const Coords& z, const StandardizationStats& stats);

/// Raw (distinct_partners, external_share_pct) pairs in feature order.
std::vector<Coords> raw_axes(std::span<const CountryFeatures> features);

/// Standardized feature points ready for clustering.
std::vector<FeaturePoint> feature_points(std::span<const CountryFeatures> features,
                                         StandardizationStats* stats_out = nullptr);

double squared_distance(const Coords& a, const Coords& b);

/// Nearest centroid by squared Euclidean distance, ties to the lowest index.
/// Throws Error(NoCentroids).
std::vector<int> assign(std::span<const Coords> points, std::span<const Coords> centroids);

/// k-means++ (D^2) seeding. Throws Error(TooFewDistinctPoints) if fewer than k
/// distinct points exist.
std::vector<Coords> kmeans_pp_seed(std::span<const Coords> points, int k, SplitMix64& rng);

struct LloydResult {
    std::vector<Coords> centroids;
    std::vector<int> assignments;
    double wcss = 0.0;
    int iterations = 0;
    /// Objective after the initial assignment and after every accepted iteration.
    std::vector<double> wcss_history;
};

/// Lloyd iterations from the given centroids. Stops on a fixed point, when the
/// relative WCSS improvement drops below `tol`, or after `max_iter` iterations.
/// Empty clusters are refilled with the point farthest from its centroid.
LloydResult lloyd(std::span<const Coords> points, std::vector<Coords> centroids, double tol, int max_iter);

struct KMeansOptions {
    int k = 3;
    std::uint64_t seed = 1;
    int restarts = 10;
    double tol = 1e-9;
    int max_iter = 100;
};

struct ClusterModel {
    int k = 0;
    std::vector<Coords> centroids;
    std::map<CountryId, int> assignments;
    double wcss = 0.0;
    int iterations = 0;
    std::uint64_t seed = 0;
    int best_restart = 0;
    std::vector<double> wcss_history;
};

/// Best-of-restarts k-means. Points are put into a canonical order first so
/// the result does not depend on input order. Restart r is seeded from
/// (seed, r) only; ties between restarts go to the lowest index.
ClusterModel kmeans(std::span<const FeaturePoint> points, const KMeansOptions& options);

double wcss(std::span<const Coords> points, std::span<const Coords> centroids, std::span<const int> assignments);

/// Cluster centroids in raw (distinct_partners, external_share_pct) units,
/// computed as member means rather than by destandardizing, so a cluster of
/// identical points lands exactly on them.
std::vector<Coords> raw_centroids(std::span<const CountryFeatures> features, const ClusterModel& model);

inline constexpr std::string_view kClustersCsvHeader = "country,cluster,distinct_partners,external_share_pct";

/// Rows sorted by (cluster, country).
std::string write_clusters_csv(std::span<const CountryFeatures> features, const ClusterModel& model);

} // namespace collab
