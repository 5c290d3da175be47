#include "collab/country_features.hpp"
#include "collab/error.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace collab;

namespace {

const CountryFeatures& find(const std::vector<CountryFeatures>& fs, const std::string& label)
{
    auto it = std::find_if(fs.begin(), fs.end(), [&](const CountryFeatures& f) { return f.country.str() == label; });
    if (it == fs.end()) {
        throw std::runtime_error("no such country " + label);
    }
    return *it;
}

CountryFeatures make(const std::string& label, std::size_t partners, double share, Weight self = 1)
{
    CountryFeatures f{CountryId(label)};
    f.distinct_partners = partners;
    f.external_share_pct = share;
    f.self_weight = self;
    return f;
}

} // namespace

TEST(ComputeFeatures, HandCountedExample)
{
    const auto fs = compute_features(parse_edge_list("source,target,weight\nA,A,4\nA,B,6\nA,C,2"));
    ASSERT_EQ(fs.size(), 3u);
    EXPECT_EQ(fs[0].country.str(), "A");
    EXPECT_EQ(fs[0].self_weight, 4u);
    EXPECT_EQ(fs[0].external_weight, 8u);
    EXPECT_EQ(fs[0].distinct_partners, 2u);
    EXPECT_NEAR(fs[0].external_share_pct, 200.0 / 3.0, 1e-12);
    EXPECT_EQ(find(fs, "B").external_share_pct, 100.0);
}

TEST(ComputeFeatures, FullyExternalCountry)
{
    const auto fs = compute_features(parse_edge_list("source,target,weight\nL,B,5"));
    const auto& l = find(fs, "L");
    EXPECT_EQ(l.self_weight, 0u);
    EXPECT_EQ(l.external_share_pct, 100.0);
    EXPECT_EQ(l.distinct_partners, 1u);
}

TEST(ComputeFeatures, SelfLoopsOnly)
{
    const auto fs = compute_features(parse_edge_list("source,target,weight\nA,A,3\nB,C,1"));
    const auto& a = find(fs, "A");
    EXPECT_EQ(a.external_share_pct, 0.0);
    EXPECT_EQ(a.distinct_partners, 0u);
}

TEST(ComputeFeatures, EmptyGraphRejected)
{
    EXPECT_THROW(compute_features(CollaborationGraph{}), Error);
}

TEST(ComputeFeatures, MatchesRowAccumulationOracle)
{
    auto rng = SplitMix64::derive(77, 0);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(20));
        const auto rows = oracle::random_rows(rng, n);
        const auto expected = oracle::features_from_rows(rows);
        const auto fs = compute_features(parse_edge_list(oracle::rows_to_text(rows)));
        ASSERT_EQ(fs.size(), expected.size());

        Weight external_total = 0;
        for (const auto& f : fs) {
            const auto& e = expected.at(f.country.str());
            EXPECT_EQ(f.self_weight, e.self);
            EXPECT_EQ(f.external_weight, e.external);
            EXPECT_EQ(f.distinct_partners, e.partners.size());
            const double share = 100.0 * static_cast<double>(e.external) / static_cast<double>(e.self + e.external);
            EXPECT_NEAR(f.external_share_pct, share, 1e-12);
            EXPECT_GE(f.external_share_pct, 0.0);
            EXPECT_LE(f.external_share_pct, 100.0);
            EXPECT_EQ(f.external_share_pct == 100.0, f.self_weight == 0);
            EXPECT_EQ(f.external_share_pct == 0.0, f.external_weight == 0);
            EXPECT_EQ(f.distinct_partners == 0, f.external_weight == 0);
            EXPECT_LE(f.distinct_partners, fs.size() - 1);
            external_total += f.external_weight;
        }
        EXPECT_EQ(external_total % 2, 0u);
        EXPECT_TRUE(std::is_sorted(fs.begin(), fs.end(), [](const CountryFeatures& a, const CountryFeatures& b) {
            return a.country < b.country;
        }));
    }
}

TEST(ClassifyQuadrant, Examples)
{
    EXPECT_EQ(classify_quadrant(100.0, 1.0, {50.0, 20.0}), Quadrant::TopLeft);
    EXPECT_EQ(classify_quadrant(0.0, 0.0, {0.5, 0.5}), Quadrant::BottomLeft);
    EXPECT_EQ(classify_quadrant(50.0, 20.0, {50.0, 20.0}), Quadrant::BottomLeft);
    EXPECT_EQ(classify_quadrant(50.1, 20.1, {50.0, 20.0}), Quadrant::TopRight);
    EXPECT_EQ(classify_quadrant(10.0, 21.0, {50.0, 20.0}), Quadrant::BottomRight);
}

TEST(MedianThresholds, OddEvenAndPermutation)
{
    std::vector<CountryFeatures> odd{make("A", 1, 10), make("B", 3, 50), make("C", 2, 90)};
    auto t = median_thresholds(odd);
    EXPECT_EQ(t.share_cut, 50.0);
    EXPECT_EQ(t.partners_cut, 2.0);

    std::vector<CountryFeatures> even{make("A", 1, 10), make("B", 2, 20), make("C", 3, 80), make("D", 8, 90)};
    t = median_thresholds(even);
    EXPECT_EQ(t.share_cut, 50.0);
    EXPECT_EQ(t.partners_cut, 2.5);

    std::reverse(even.begin(), even.end());
    const auto t2 = median_thresholds(even);
    EXPECT_EQ(t2.share_cut, t.share_cut);
    EXPECT_EQ(t2.partners_cut, t.partners_cut);

    EXPECT_THROW(median_thresholds(std::vector<CountryFeatures>{}), Error);
}

TEST(Extremes, Examples)
{
    std::vector<CountryFeatures> fs{make("A", 2, 40), make("B", 5, 70)};
    auto r = extremes(fs);
    EXPECT_EQ(r.top_right.str(), "B");
    EXPECT_EQ(r.bottom_left.str(), "A");

    std::vector<CountryFeatures> single{make("Z", 0, 0)};
    r = extremes(single);
    EXPECT_EQ(r.top_right.str(), "Z");
    EXPECT_EQ(r.bottom_left.str(), "Z");

    EXPECT_THROW(extremes(std::vector<CountryFeatures>{}), Error);
}

TEST(Extremes, TiesBreakToSmallestLabel)
{
    std::vector<CountryFeatures> fs{make("C", 3, 30), make("B", 3, 30), make("D", 1, 5), make("A", 1, 5)};
    const auto r = extremes(fs);
    EXPECT_EQ(r.top_right.str(), "B");
    EXPECT_EQ(r.bottom_left.str(), "A");
}

TEST(Extremes, MatchesExhaustiveComparison)
{
    auto rng = SplitMix64::derive(5, 0);
    for (int trial = 0; trial < 40; ++trial) {
        const auto rows = oracle::random_rows(rng, 2 + static_cast<int>(rng.below(15)));
        const auto fs = compute_features(parse_edge_list(oracle::rows_to_text(rows)));
        const auto r = extremes(fs);
        for (const auto& f : fs) {
            const auto& top = find(fs, r.top_right.str());
            // never strictly dominated on both axes
            EXPECT_FALSE(f.distinct_partners > top.distinct_partners &&
                         f.external_share_pct > top.external_share_pct);
            // lexicographic maximum: nothing beats it under the key
            const bool beats = f.distinct_partners > top.distinct_partners ||
                               (f.distinct_partners == top.distinct_partners &&
                                f.external_share_pct > top.external_share_pct);
            EXPECT_FALSE(beats);
        }
        std::vector<CountryId> zero_self;
        for (const auto& f : fs) {
            if (f.self_weight == 0) {
                zero_self.push_back(f.country);
            }
        }
        EXPECT_EQ(r.fully_external, zero_self);
    }
}

TEST(Extremes, SynthesizedGraphHasFullyExternal)
{
    const auto r = extremes(compute_features(synthesize_graph(1, 50)));
    EXPECT_FALSE(r.fully_external.empty());
}

TEST(FeaturesCsv, Format)
{
    const auto fs = compute_features(parse_edge_list("source,target,weight\nA,A,4\nA,B,6\nA,C,2"));
    EXPECT_EQ(write_features_csv(fs), "country,self_weight,external_weight,distinct_partners,external_share_pct\n"
                                      "A,4,8,2,66.666667\n"
                                      "B,0,6,1,100.000000\n"
                                      "C,0,2,1,100.000000\n");
}
