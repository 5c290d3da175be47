#include "collab/country_features.hpp"

#include "collab/error.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <map>
#include <tuple>

namespace collab {

const char* to_string(Quadrant q)
{
    switch (q) {
    case Quadrant::BottomLeft: return "BottomLeft";
    case Quadrant::BottomRight: return "BottomRight";
    case Quadrant::TopLeft: return "TopLeft";
    case Quadrant::TopRight: return "TopRight";
    }
    return "Unknown";
}

std::vector<CountryFeatures> compute_features(const CollaborationGraph& graph)
{
    if (graph.empty()) {
        throw Error(ErrorCode::EmptyGraph, "graph has no countries");
    }

    std::map<CountryId, CountryFeatures> acc;
    for (const auto& node : graph.nodes()) {
        acc.emplace(node, CountryFeatures{node});
    }
    for (const auto& [pair, w] : graph.edges()) {
        const auto& [a, b] = pair;
        if (a == b) {
            acc.at(a).self_weight += w;
            continue;
        }
        for (const auto* end : {&a, &b}) {
            auto& f = acc.at(*end);
            f.external_weight += w;
            // canonical pairs are unique, so each edge is one distinct partner
            ++f.distinct_partners;
        }
    }

    std::vector<CountryFeatures> out;
    out.reserve(acc.size());
    for (auto& [id, f] : acc) {
        const Weight total = f.self_weight + f.external_weight;
        if (f.external_weight == 0) {
            f.external_share_pct = 0.0;
        } else if (f.self_weight == 0) {
            f.external_share_pct = 100.0;
        } else {
            f.external_share_pct = 100.0 * static_cast<double>(f.external_weight) / static_cast<double>(total);
        }
        out.push_back(std::move(f));
    }
    return out;
}

Quadrant classify_quadrant(double share_pct, double partners, const QuadrantThresholds& thresholds)
{
    const bool top = share_pct > thresholds.share_cut;
    const bool right = partners > thresholds.partners_cut;
    if (top) {
        return right ? Quadrant::TopRight : Quadrant::TopLeft;
    }
    return right ? Quadrant::BottomRight : Quadrant::BottomLeft;
}

Quadrant classify_quadrant(const CountryFeatures& features, const QuadrantThresholds& thresholds)
{
    return classify_quadrant(features.external_share_pct, static_cast<double>(features.distinct_partners),
                             thresholds);
}

double median(std::vector<double> values)
{
    if (values.empty()) {
        throw Error(ErrorCode::EmptyFeatureList, "median of an empty list");
    }
    std::sort(values.begin(), values.end());
    const auto n = values.size();
    if (n % 2 == 1) {
        return values[n / 2];
    }
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

QuadrantThresholds median_thresholds(std::span<const CountryFeatures> features)
{
    if (features.empty()) {
        throw Error(ErrorCode::EmptyFeatureList, "cannot compute thresholds of an empty feature list");
    }
    std::vector<double> shares;
    std::vector<double> partners;
    for (const auto& f : features) {
        shares.push_back(f.external_share_pct);
        partners.push_back(static_cast<double>(f.distinct_partners));
    }
    return {median(std::move(shares)), median(std::move(partners))};
}

ExtremesReport extremes(std::span<const CountryFeatures> features)
{
    if (features.empty()) {
        throw Error(ErrorCode::EmptyFeatureList, "cannot report extremes of an empty feature list");
    }
    auto key = [](const CountryFeatures& f) { return std::tuple(f.distinct_partners, f.external_share_pct); };

    const CountryFeatures* top = &features.front();
    const CountryFeatures* bottom = &features.front();
    std::vector<CountryId> fully_external;
    for (const auto& f : features) {
        if (key(f) > key(*top) || (key(f) == key(*top) && f.country < top->country)) {
            top = &f;
        }
        if (key(f) < key(*bottom) || (key(f) == key(*bottom) && f.country < bottom->country)) {
            bottom = &f;
        }
        if (f.self_weight == 0) {
            fully_external.push_back(f.country);
        }
    }
    std::sort(fully_external.begin(), fully_external.end());
    return {top->country, bottom->country, std::move(fully_external)};
}

std::string write_features_csv(std::span<const CountryFeatures> features)
{
    std::string out(kFeaturesCsvHeader);
    out += '\n';
    for (const auto& f : features) {
        out += fmt::format("{},{},{},{},{:.6f}\n", f.country.str(), f.self_weight, f.external_weight,
                           f.distinct_partners, f.external_share_pct);
    }
    return out;
}

} // namespace collab
