#include "collab/graph_io.hpp"

#include "collab/error.hpp"
#include "collab/rng.hpp"

#include <algorithm>
#include <charconv>
#include <fmt/format.h>
#include <span>
#include <optional>
#include <sstream>
#include <vector>

namespace collab {

namespace {

bool is_space(char c)
{
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

struct LabelProblem {
    ErrorCode code;
    std::string message;
};

std::optional<LabelProblem> check_label(std::string_view label)
{
    if (std::all_of(label.begin(), label.end(), is_space)) {
        return LabelProblem{ErrorCode::EmptyCountryLabel, "country label is empty"};
    }
    if (label.find(',') != std::string_view::npos) {
        return LabelProblem{ErrorCode::MalformedRow, fmt::format("country label '{}' contains a comma", label)};
    }
    if (is_space(label.front()) || is_space(label.back())) {
        return LabelProblem{ErrorCode::MalformedRow,
                            fmt::format("country label '{}' has leading or trailing whitespace", label)};
    }
    return std::nullopt;
}

std::optional<Weight> parse_weight(std::string_view field)
{
    if (field.empty() || !std::all_of(field.begin(), field.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        return std::nullopt;
    }
    Weight w = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), w);
    if (ec != std::errc{} || ptr != field.data() + field.size() || w == 0) {
        return std::nullopt;
    }
    return w;
}

std::vector<std::string_view> split_commas(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

} // namespace

CountryId::CountryId(std::string label)
    : label_(std::move(label))
{
    if (auto problem = check_label(label_)) {
        throw Error(problem->code, problem->message);
    }
}

CollaborationGraph::Pair CollaborationGraph::canonical(const CountryId& a, const CountryId& b)
{
    return a <= b ? Pair{a, b} : Pair{b, a};
}

void CollaborationGraph::add_connection(const CountryId& a, const CountryId& b, Weight w)
{
    if (w == 0) {
        throw Error(ErrorCode::NonPositiveWeight, "connection weight must be positive");
    }
    nodes_.insert(a);
    nodes_.insert(b);
    edges_[canonical(a, b)] += w;
}

Weight CollaborationGraph::weight(const CountryId& a, const CountryId& b) const
{
    auto it = edges_.find(canonical(a, b));
    return it == edges_.end() ? 0 : it->second;
}

CollaborationGraph parse_edge_list(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != kEdgeListHeader) {
        throw Error(ErrorCode::MissingHeader, fmt::format("first line must be '{}'", kEdgeListHeader), 1);
    }

    CollaborationGraph graph;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        auto fields = split_commas(line);
        if (fields.size() != 3) {
            throw Error(ErrorCode::MalformedRow, fmt::format("expected 3 fields, found {}", fields.size()), line_no);
        }
        for (std::size_t i = 0; i < 2; ++i) {
            if (auto problem = check_label(fields[i])) {
                throw Error(problem->code, problem->message, line_no);
            }
        }
        auto w = parse_weight(fields[2]);
        if (!w) {
            throw Error(ErrorCode::NonPositiveWeight,
                        fmt::format("weight '{}' is not a positive base-10 integer", fields[2]), line_no);
        }
        graph.add_connection(CountryId(std::string(fields[0])), CountryId(std::string(fields[1])), *w);
    }
    return graph;
}

CollaborationGraph parse_edge_list(std::string_view text)
{
    std::istringstream in{std::string(text)};
    return parse_edge_list(in);
}

std::string write_graph(const CollaborationGraph& graph)
{
    std::string out(kEdgeListHeader);
    out += '\n';
    // std::map iteration over canonical pairs is already lexicographic
    for (const auto& [pair, w] : graph.edges()) {
        out += fmt::format("{},{},{}\n", pair.first.str(), pair.second.str(), w);
    }
    return out;
}

CollaborationGraph synthesize_graph(std::uint64_t seed, int n_countries)
{
    if (n_countries < 4) {
        throw Error(ErrorCode::TooFewCountries, fmt::format("need at least 4 countries, got {}", n_countries));
    }
    const auto n = static_cast<std::size_t>(n_countries);

    // population sizes: hubs / domestic-leaning / foreign-dependent at 40/40/20
    const std::size_t n_hub = std::max<std::size_t>(1, n * 2 / 5);
    const std::size_t n_foreign = std::max<std::size_t>(1, n / 5);
    const std::size_t n_domestic = n - n_hub - n_foreign;

    auto rng_labels = SplitMix64::derive(seed, 0);
    auto rng_edges = SplitMix64::derive(seed, 1);
    auto rng_self = SplitMix64::derive(seed, 2);

    const auto width = std::to_string(n).size();
    std::vector<CountryId> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels.emplace_back(fmt::format("C{:0{}}", i + 1, width));
    }
    for (std::size_t i = n - 1; i > 0; --i) {
        std::swap(labels[i], labels[rng_labels.below(i + 1)]);
    }

    const std::span<const CountryId> all(labels);
    const auto hubs = all.subspan(0, n_hub);
    const auto domestic = all.subspan(n_hub, n_domestic);
    const auto foreign = all.subspan(n_hub + n_domestic);

    CollaborationGraph graph;
    for (std::size_t i = 0; i < n_hub; ++i) {
        for (std::size_t j = i + 1; j < n_hub; ++j) {
            graph.add_connection(hubs[i], hubs[j], static_cast<Weight>(rng_edges.between(5, 40)));
        }
    }

    // Every peripheral country links only to hubs. Domestic-leaning countries
    // get exactly `periph_partners` hubs, walked cyclically so every hub is
    // covered; foreign-dependent ones get 1..min(2, periph_partners).
    const std::size_t periph_partners = std::min<std::size_t>(3, n_hub);
    for (std::size_t j = 0; j < n_domestic; ++j) {
        for (std::size_t t = 0; t < periph_partners; ++t) {
            const auto& hub = hubs[(j * periph_partners + t) % n_hub];
            graph.add_connection(domestic[j], hub, static_cast<Weight>(rng_edges.between(1, 12)));
        }
    }
    for (const auto& country : foreign) {
        const auto n_links = static_cast<std::size_t>(
            rng_edges.between(1, static_cast<std::int64_t>(std::min<std::size_t>(2, periph_partners))));
        const auto start = rng_edges.below(n_hub);
        for (std::size_t t = 0; t < n_links; ++t) {
            graph.add_connection(country, hubs[(start + t) % n_hub], static_cast<Weight>(rng_edges.between(1, 6)));
        }
    }

    auto external = [&graph](const CountryId& c) {
        Weight total = 0;
        for (const auto& [pair, w] : graph.edges()) {
            if (pair.first != pair.second && (pair.first == c || pair.second == c)) {
                total += w;
            }
        }
        return total;
    };

    // Domestic-leaning countries all sit at share 1/(ratio+1), exactly 25% or
    // 20%; hubs strictly below it, foreign-dependent countries at 80% or more
    // (the first at 100%).
    const auto ratio = static_cast<Weight>(rng_self.between(3, 4));
    std::vector<std::pair<CountryId, Weight>> self_loops;
    for (const auto& c : hubs) {
        const Weight ext = external(c);
        self_loops.emplace_back(c, ext * (ratio + 1) + rng_self.below(2 * ext + 1));
    }
    for (const auto& c : domestic) {
        self_loops.emplace_back(c, external(c) * ratio);
    }
    for (std::size_t i = 0; i < foreign.size(); ++i) {
        const Weight ext = external(foreign[i]);
        self_loops.emplace_back(foreign[i], i == 0 ? 0 : rng_self.below(ext / 4 + 1));
    }
    for (const auto& [c, w] : self_loops) {
        if (w > 0) {
            graph.add_connection(c, c, w);
        }
    }
    return graph;
}

} // namespace collab
