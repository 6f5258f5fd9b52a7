#include "../support/oracles.hpp"

#include <ldit/catalog.hpp>
#include <ldit/detectability.hpp>
#include <ldit/error.hpp>

#include <gtest/gtest.h>

namespace {

std::vector<ldit::CatalogEntry> with_rcs(const std::vector<std::optional<double>>& rcs) {
    std::vector<ldit::CatalogEntry> out;
    for (std::size_t i = 0; i < rcs.size(); ++i) {
        ldit::CatalogEntry e;
        e.norad_id = static_cast<int>(100 + i);
        e.rcs_dbsm = rcs[i];
        e.rcs_missing = !rcs[i];
        out.push_back(e);
    }
    return out;
}

} // namespace

TEST(Detectability, ExtremesAreExact) {
    const auto s = ldit::score_detectability(with_rcs({-3.0, 7.5, 2.0}));
    ASSERT_EQ(s.size(), 3u);
    EXPECT_EQ(s[0].s_d, 0.0);
    EXPECT_EQ(s[1].s_d, 1.0);
    EXPECT_NEAR(s[2].s_d, 5.0 / 10.5, 1e-15);
}

TEST(Detectability, MissingEntriesAreSkipped) {
    const auto s = ldit::score_detectability(with_rcs({1.0, std::nullopt, 3.0}));
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s[0].norad_id, 100);
    EXPECT_EQ(s[1].norad_id, 102);
}

TEST(Detectability, DegenerateRange) {
    EXPECT_THROW(ldit::score_detectability(with_rcs({2.0, 2.0})), ldit::Error);
    EXPECT_THROW(ldit::score_detectability(with_rcs({2.0})), ldit::Error);
    EXPECT_THROW(ldit::min_max_normalize({}), ldit::Error);
}

TEST(Detectability, MatchesOracle) {
    oracle::Gen g(3);
    std::vector<double> v;
    for (int i = 0; i < 500; ++i) v.push_back(g.uniform(-40.0, 30.0));
    const auto lo = *std::min_element(v.begin(), v.end());
    const auto hi = *std::max_element(v.begin(), v.end());
    const auto s = ldit::min_max_normalize(v);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(s[i], oracle::detectability(v[i], lo, hi), 1e-12);
}

TEST(Detectability, Histogram) {
    const auto h = ldit::score_histogram_json({0.0, 0.05, 0.5, 1.0}, 10, "S_D");
    EXPECT_EQ(h["counts"][0], 2);
    EXPECT_EQ(h["counts"][5], 1);
    EXPECT_EQ(h["counts"][9], 1);
    EXPECT_EQ(h["bin_edges"].size(), 11u);
}
