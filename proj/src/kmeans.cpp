#include "collab/kmeans.hpp"

#include "collab/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numeric>
#include <set>
#include <tuple>

namespace collab {

namespace {

std::size_t count_distinct(std::span<const Coords> points)
{
    return std::set<Coords>(points.begin(), points.end()).size();
}

std::vector<Coords> cluster_means(std::span<const Coords> points, std::span<const int> assignments, int k,
                                  std::span<const Coords> fallback)
{
    std::vector<Coords> sums(static_cast<std::size_t>(k), Coords{0.0, 0.0});
    std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto c = static_cast<std::size_t>(assignments[i]);
        sums[c][0] += points[i][0];
        sums[c][1] += points[i][1];
        ++counts[c];
    }
    for (std::size_t c = 0; c < sums.size(); ++c) {
        if (counts[c] == 0) {
            sums[c] = fallback[c];
            continue;
        }
        const auto n = static_cast<double>(counts[c]);
        sums[c] = {sums[c][0] / n, sums[c][1] / n};
    }
    return sums;
}

// Moves the farthest point (from a cluster with at least two members) into
// each empty cluster, lowest cluster index first.
void repair_empty(std::span<const Coords> points, std::span<Coords> centroids, std::vector<int>& assignments)
{
    const auto k = centroids.size();
    std::vector<std::size_t> counts(k, 0);
    for (int a : assignments) {
        ++counts[static_cast<std::size_t>(a)];
    }
    for (std::size_t empty = 0; empty < k; ++empty) {
        if (counts[empty] != 0) {
            continue;
        }
        std::size_t best = points.size();
        double best_d = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const auto c = static_cast<std::size_t>(assignments[i]);
            if (counts[c] < 2) {
                continue;
            }
            const double d = squared_distance(points[i], centroids[c]);
            if (d > best_d) {
                best_d = d;
                best = i;
            }
        }
        if (best == points.size()) {
            break;
        }
        --counts[static_cast<std::size_t>(assignments[best])];
        assignments[best] = static_cast<int>(empty);
        centroids[empty] = points[best];
        ++counts[empty];
    }
}

} // namespace

Standardized standardize(std::span<const Coords> points)
{
    if (points.empty()) {
        throw Error(ErrorCode::EmptyPointList, "cannot standardize an empty point list");
    }
    const auto n = static_cast<double>(points.size());
    StandardizationStats stats;
    for (std::size_t axis = 0; axis < 2; ++axis) {
        double sum = 0.0;
        for (const auto& p : points) {
            sum += p[axis];
        }
        const double mean = sum / n;
        double ss = 0.0;
        for (const auto& p : points) {
            ss += (p[axis] - mean) * (p[axis] - mean);
        }
        stats.mean[axis] = mean;
        stats.sd[axis] = std::sqrt(ss / n);
    }

    Standardized out{{}, stats};
    out.coords.reserve(points.size());
    for (const auto& p : points) {
        Coords z{};
        for (std::size_t axis = 0; axis < 2; ++axis) {
            z[axis] = stats.sd[axis] > 0.0 ? (p[axis] - stats.mean[axis]) / stats.sd[axis] : 0.0;
        }
        out.coords.push_back(z);
    }
    return out;
}

Coords destandardize(const Coords& z, const StandardizationStats& stats)
{
    return {stats.mean[0] + stats.sd[0] * z[0], stats.mean[1] + stats.sd[1] * z[1]};
}

std::vector<Coords> raw_axes(std::span<const CountryFeatures> features)
{
    std::vector<Coords> raw;
    raw.reserve(features.size());
    for (const auto& f : features) {
        raw.push_back({static_cast<double>(f.distinct_partners), f.external_share_pct});
    }
    return raw;
}

std::vector<FeaturePoint> feature_points(std::span<const CountryFeatures> features, StandardizationStats* stats_out)
{
    const auto raw = raw_axes(features);
    auto z = standardize(raw);
    if (stats_out != nullptr) {
        *stats_out = z.stats;
    }
    std::vector<FeaturePoint> out;
    out.reserve(features.size());
    for (std::size_t i = 0; i < features.size(); ++i) {
        out.push_back({features[i].country, z.coords[i]});
    }
    return out;
}

double squared_distance(const Coords& a, const Coords& b)
{
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    return dx * dx + dy * dy;
}

std::vector<int> assign(std::span<const Coords> points, std::span<const Coords> centroids)
{
    if (centroids.empty()) {
        throw Error(ErrorCode::NoCentroids, "assignment requires at least one centroid");
    }
    std::vector<int> out(points.size(), 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        double best = squared_distance(points[i], centroids[0]);
        for (std::size_t c = 1; c < centroids.size(); ++c) {
            const double d = squared_distance(points[i], centroids[c]);
            if (d < best) {
                best = d;
                out[i] = static_cast<int>(c);
            }
        }
    }
    return out;
}

std::vector<Coords> kmeans_pp_seed(std::span<const Coords> points, int k, SplitMix64& rng)
{
    if (k < 1) {
        throw Error(ErrorCode::InvalidK, fmt::format("k must be at least 1, got {}", k));
    }
    if (count_distinct(points) < static_cast<std::size_t>(k)) {
        throw Error(ErrorCode::TooFewDistinctPoints,
                    fmt::format("need at least {} distinct points for seeding", k));
    }

    std::vector<Coords> centroids;
    centroids.reserve(static_cast<std::size_t>(k));
    centroids.push_back(points[rng.below(points.size())]);

    std::vector<double> d2(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        d2[i] = squared_distance(points[i], centroids.back());
    }
    while (centroids.size() < static_cast<std::size_t>(k)) {
        const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
        const double target = rng.uniform() * total;
        std::size_t pick = points.size();
        double cum = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (d2[i] <= 0.0) {
                continue;
            }
            pick = i;
            cum += d2[i];
            if (cum > target) {
                break;
            }
        }
        centroids.push_back(points[pick]);
        for (std::size_t i = 0; i < points.size(); ++i) {
            d2[i] = std::min(d2[i], squared_distance(points[i], centroids.back()));
        }
    }
    return centroids;
}

double wcss(std::span<const Coords> points, std::span<const Coords> centroids, std::span<const int> assignments)
{
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        total += squared_distance(points[i], centroids[static_cast<std::size_t>(assignments[i])]);
    }
    return total;
}

LloydResult lloyd(std::span<const Coords> points, std::vector<Coords> centroids, double tol, int max_iter)
{
    const int k = static_cast<int>(centroids.size());
    LloydResult run;
    run.assignments = assign(points, centroids);
    repair_empty(points, centroids, run.assignments);
    run.centroids = cluster_means(points, run.assignments, k, centroids);
    run.wcss = wcss(points, run.centroids, run.assignments);
    run.wcss_history.push_back(run.wcss);

    while (run.iterations < max_iter) {
        auto centers = run.centroids;
        auto next = assign(points, centers);
        repair_empty(points, centers, next);
        ++run.iterations;
        if (next == run.assignments) {
            break;
        }
        auto means = cluster_means(points, next, k, centers);
        const double cost = wcss(points, means, next);
        const double previous = run.wcss;
        run.assignments = std::move(next);
        run.centroids = std::move(means);
        run.wcss = cost;
        run.wcss_history.push_back(cost);
        if (previous <= 0.0 || (previous - cost) / previous < tol) {
            break;
        }
    }
    return run;
}

ClusterModel kmeans(std::span<const FeaturePoint> points, const KMeansOptions& options)
{
    if (options.k < 1) {
        throw Error(ErrorCode::InvalidK, fmt::format("k must be at least 1, got {}", options.k));
    }
    if (options.restarts < 1 || options.max_iter < 1 || !(options.tol > 0.0)) {
        throw Error(ErrorCode::InvalidParameter, "restarts, max_iter and tol must be positive");
    }
    for (const auto& p : points) {
        if (!std::isfinite(p.coords[0]) || !std::isfinite(p.coords[1])) {
            throw Error(ErrorCode::InvalidParameter,
                        fmt::format("point for '{}' has non-finite coordinates", p.country.str()));
        }
    }

    // canonical order: by coordinates, then label
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(points[a].coords, points[a].country) < std::tie(points[b].coords, points[b].country);
    });
    std::vector<Coords> coords;
    coords.reserve(points.size());
    for (auto i : order) {
        coords.push_back(points[i].coords);
    }
    if (count_distinct(coords) < static_cast<std::size_t>(options.k)) {
        throw Error(ErrorCode::TooFewDistinctPoints,
                    fmt::format("{} distinct points cannot form {} clusters", count_distinct(coords), options.k));
    }

    LloydResult best;
    int best_restart = -1;
    for (int r = 0; r < options.restarts; ++r) {
        auto rng = SplitMix64::derive(options.seed, static_cast<std::uint64_t>(r));
        auto run = lloyd(coords, kmeans_pp_seed(coords, options.k, rng), options.tol, options.max_iter);
        if (best_restart < 0 || run.wcss < best.wcss) {
            best = std::move(run);
            best_restart = r;
        }
    }

    ClusterModel model;
    model.k = options.k;
    model.centroids = best.centroids;
    model.wcss = best.wcss;
    model.iterations = best.iterations;
    model.seed = options.seed;
    model.best_restart = best_restart;
    model.wcss_history = best.wcss_history;
    for (std::size_t j = 0; j < order.size(); ++j) {
        model.assignments.emplace(points[order[j]].country, best.assignments[j]);
    }
    return model;
}

std::vector<Coords> raw_centroids(std::span<const CountryFeatures> features, const ClusterModel& model)
{
    std::vector<Coords> sums(static_cast<std::size_t>(model.k), Coords{0.0, 0.0});
    std::vector<std::size_t> counts(sums.size(), 0);
    for (const auto& f : features) {
        const auto it = model.assignments.find(f.country);
        if (it == model.assignments.end()) {
            throw Error(ErrorCode::InvalidParameter, fmt::format("country {} is not in the model", f.country.str()));
        }
        const auto c = static_cast<std::size_t>(it->second);
        sums[c][0] += static_cast<double>(f.distinct_partners);
        sums[c][1] += f.external_share_pct;
        ++counts[c];
    }
    for (std::size_t c = 0; c < sums.size(); ++c) {
        if (counts[c] == 0) {
            throw Error(ErrorCode::InvalidParameter, fmt::format("cluster {} has no members", c));
        }
        sums[c][0] /= static_cast<double>(counts[c]);
        sums[c][1] /= static_cast<double>(counts[c]);
    }
    return sums;
}

std::string write_clusters_csv(std::span<const CountryFeatures> features, const ClusterModel& model)
{
    std::vector<const CountryFeatures*> rows;
    for (const auto& f : features) {
        rows.push_back(&f);
    }
    std::sort(rows.begin(), rows.end(), [&](const CountryFeatures* a, const CountryFeatures* b) {
        return std::tuple(model.assignments.at(a->country), a->country) <
               std::tuple(model.assignments.at(b->country), b->country);
    });
    std::string out(kClustersCsvHeader);
    out += '\n';
    for (const auto* f : rows) {
        out += fmt::format("{},{},{},{:.6f}\n", f->country.str(), model.assignments.at(f->country),
                           f->distinct_partners, f->external_share_pct);
    }
    return out;
}

} // namespace collab
