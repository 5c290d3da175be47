#pragma once

#include <cstdint>
#include <compare>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>

namespace collab {

/// Country label: non-empty, comma-free, no surrounding whitespace.
/// Comparison is exact and case-sensitive.
class CountryId
{
public:
    /// Throws Error(EmptyCountryLabel) or Error(MalformedRow) for invalid labels.
    explicit CountryId(std::string label);

    const std::string& str() const noexcept { return label_; }

    friend bool operator==(const CountryId&, const CountryId&) = default;
    friend auto operator<=>(const CountryId&, const CountryId&) = default;

private:
    std::string label_;
};

using Weight = std::uint64_t;

/// Undirected weighted graph over countries. Self-loops hold domestic weight.
/// Pairs are stored canonically (smaller label first); weights are always > 0.
class CollaborationGraph
{
public:
    using Pair = std::pair<CountryId, CountryId>;

    /// Adds `w` to the unordered pair (a, b), creating both nodes as needed.
    /// Throws Error(NonPositiveWeight) when w == 0.
    void add_connection(const CountryId& a, const CountryId& b, Weight w);

    /// 0 when the pair has no edge. Symmetric in its arguments.
    Weight weight(const CountryId& a, const CountryId& b) const;

    const std::set<CountryId>& nodes() const noexcept { return nodes_; }
    const std::map<Pair, Weight>& edges() const noexcept { return edges_; }
    bool empty() const noexcept { return nodes_.empty(); }

    static Pair canonical(const CountryId& a, const CountryId& b);

    friend bool operator==(const CollaborationGraph&, const CollaborationGraph&) = default;

private:
    std::set<CountryId> nodes_;
    std::map<Pair, Weight> edges_;
};

inline constexpr std::string_view kEdgeListHeader = "source,target,weight";

/// Reads the `source,target,weight` edge-list format. Duplicate pairs, in
/// either order, accumulate by summation.
CollaborationGraph parse_edge_list(std::istream& in);
CollaborationGraph parse_edge_list(std::string_view text);

/// Header plus one LF-terminated row per canonical pair, rows in lexicographic order.
std::string write_graph(const CollaborationGraph& graph);

/// Deterministic synthetic graph with three country populations (hubs,
/// domestic-leaning peripherals, foreign-dependent peripherals) in 40/40/20
/// proportions. Throws Error(TooFewCountries) when n_countries < 4.
CollaborationGraph synthesize_graph(std::uint64_t seed, int n_countries);

} // namespace collab
