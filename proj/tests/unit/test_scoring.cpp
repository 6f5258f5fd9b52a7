#include <ldit/catalog.hpp>
#include <ldit/error.hpp>
#include <ldit/scoring.hpp>

#include <gtest/gtest.h>

namespace {

ldit::ScoreCard card(int id, std::optional<double> d, std::optional<double> i, std::optional<double> t) {
    ldit::ScoreCard c;
    c.norad_id = id;
    c.name = "OBJ" + std::to_string(id);
    c.s_d = d;
    c.s_i = i;
    c.s_t = t;
    if (d && i && t) c.s_dit = ldit::combine_dit(*d, *i, *t);
    c.snapshot_id = "abc";
    return c;
}

ldit::CatalogEntry entry(int id, std::optional<std::string> owner) {
    ldit::CatalogEntry e;
    e.norad_id = id;
    e.owner = std::move(owner);
    return e;
}

} // namespace

TEST(Scoring, CombineDit) {
    EXPECT_EQ(ldit::combine_dit(0.0, 0.0, 0.0), 0.0);
    EXPECT_EQ(ldit::combine_dit(1.0, 1.0, 1.0), 1.0);
    EXPECT_NEAR(ldit::combine_dit(0.3, 0.6, 0.9), 0.6, 1e-15);
    EXPECT_THROW(ldit::combine_dit(1.1, 0.0, 0.0), ldit::Error);
    EXPECT_THROW(ldit::combine_dit(std::optional<double>{0.1}, std::nullopt, std::optional<double>{0.2}),
                 ldit::Error);
}

TEST(Scoring, EntityScoresWithUnknownLast) {
    const std::vector<ldit::ScoreCard> cards{card(1, 0.3, 0.3, 0.3), card(2, 0.9, 0.9, 0.9), card(3, 0.6, 0.6, 0.6),
                                             card(4, 0.1, std::nullopt, 0.1)};
    const std::vector<ldit::CatalogEntry> cat{entry(1, "B"), entry(2, "B"), entry(3, std::nullopt), entry(4, "A")};
    const auto e = ldit::entity_scores(cards, cat, ldit::EntityRole::Owner);
    ASSERT_EQ(e.size(), 2u);
    EXPECT_EQ(e[0].entity_name, "B");
    EXPECT_EQ(e[0].asset_count, 2u);
    EXPECT_NEAR(e[0].mean_s_dit, 0.6, 1e-15);
    EXPECT_EQ(e[1].entity_name, ldit::kUnknownEntity);
    EXPECT_TRUE(e[1].unknown);
    EXPECT_EQ(ldit::entities_csv(e).substr(0, 35), "entity,role,mean_s_dit,asset_count\n");
}

TEST(Scoring, RankOrdersTiesByIdAndTruncates) {
    const std::vector<ldit::ScoreCard> cards{card(5, 0.5, 0.5, 0.5), card(2, 0.5, 0.5, 0.5), card(3, 0.9, 0.9, 0.9),
                                             card(4, std::nullopt, 0.1, 0.1)};
    const auto r = ldit::rank(cards, ldit::RankKey::SDIT, true, 10);
    ASSERT_EQ(r.size(), 3u);
    EXPECT_EQ(r[0].norad_id, 3);
    EXPECT_EQ(r[1].norad_id, 2);
    EXPECT_EQ(r[2].norad_id, 5);
    EXPECT_EQ(ldit::rank(cards, ldit::RankKey::SI, false, 2).front().norad_id, 4);
    EXPECT_EQ(ldit::rank(cards, ldit::RankKey::SI, false, 2).size(), 2u);
    EXPECT_THROW(ldit::rank_key_from_string("s_x"), ldit::Error);
    EXPECT_EQ(ldit::rank_key_from_string("s_dit"), ldit::RankKey::SDIT);
}

TEST(Scoring, CsvAndJsonRoundTrip) {
    const std::vector<ldit::ScoreCard> cards{card(1, 0.25, 0.5, 0.75), card(2, std::nullopt, 0.5, 0.75)};
    const auto csv = ldit::scores_csv(cards);
    const auto back = ldit::parse_scores_csv(csv);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0].s_d, 0.25);
    EXPECT_EQ(back[0].s_dit, 0.5);
    EXPECT_FALSE(back[1].s_d.has_value());
    EXPECT_FALSE(back[1].s_dit.has_value());
    EXPECT_EQ(ldit::scorecard_from_json(ldit::scorecard_to_json(cards[1])), cards[1]);
}

TEST(Scoring, SpiderData) {
    const auto j = ldit::spider_data(card(1, 0.25, 0.5, 0.75));
    EXPECT_EQ(j["axes"].size(), 3u);
    EXPECT_THROW(ldit::spider_data(card(1, std::nullopt, 0.5, 0.75)), ldit::Error);
}
