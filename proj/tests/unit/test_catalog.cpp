#include <ldit/catalog.hpp>
#include <ldit/error.hpp>
#include <ldit/tle.hpp>

#include <gtest/gtest.h>

#include <cmath>

namespace {

ldit::CatalogEntry per_source(int id, const std::string& source, std::optional<double> dbsm) {
    ldit::CatalogEntry e;
    e.norad_id = id;
    e.rcs_sources = {{source, dbsm}};
    return e;
}

} // namespace

TEST(MergeRcs, TakesTheLargestSourceValue) {
    const auto merged = ldit::merge_rcs({per_source(7, "A", 1.2), per_source(7, "B", 3.4)});
    ASSERT_EQ(merged.size(), 1u);
    EXPECT_EQ(merged[0].rcs_dbsm, 3.4);
    EXPECT_FALSE(merged[0].rcs_missing);
    EXPECT_EQ(merged[0].rcs_sources.size(), 2u);
}

TEST(MergeRcs, SingleSource) {
    const auto merged = ldit::merge_rcs({per_source(7, "A", -5.0)});
    EXPECT_EQ(merged[0].rcs_dbsm, -5.0);
}

TEST(MergeRcs, AllAbsentIsFlagged) {
    const auto merged = ldit::merge_rcs({per_source(7, "A", std::nullopt), per_source(7, "B", std::nullopt)});
    ASSERT_EQ(merged.size(), 1u);
    EXPECT_FALSE(merged[0].rcs_dbsm.has_value());
    EXPECT_TRUE(merged[0].rcs_missing);
}

TEST(MergeRcs, OneEntryPerObjectSortedById) {
    const auto merged = ldit::merge_rcs({per_source(9, "A", 1.0), per_source(3, "A", 2.0), per_source(9, "B", 0.5)});
    ASSERT_EQ(merged.size(), 2u);
    EXPECT_EQ(merged[0].norad_id, 3);
    EXPECT_EQ(merged[1].norad_id, 9);
    EXPECT_EQ(merged[1].rcs_dbsm, 1.0);
}

TEST(RcsCsv, ConvertsSquareMetres) {
    const auto rows = ldit::parse_rcs_csv("norad_id,source,rcs,unit\n1,A,10,m2\n1,B,3.5,dbsm\n2,A,,m2\n");
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_NEAR(*rows[0].dbsm, 10.0, 1e-12);
    EXPECT_EQ(*rows[1].dbsm, 3.5);
    EXPECT_FALSE(rows[2].dbsm.has_value());
    EXPECT_NEAR(ldit::m2_to_dbsm(0.01), -20.0, 1e-12);
}

TEST(RcsCsv, RejectsUnknownUnitAndBadHeader) {
    EXPECT_THROW(ldit::parse_rcs_csv("norad_id,source,rcs,unit\n1,A,10,ft2\n"), ldit::Error);
    EXPECT_THROW(ldit::parse_rcs_csv("id,source,rcs,unit\n"), ldit::Error);
    EXPECT_THROW(ldit::parse_rcs_csv("norad_id,source,rcs,unit\n1,A,-2,m2\n"), ldit::Error);
}

TEST(MagnitudeCsv, Parses) {
    const auto rows = ldit::parse_magnitude_csv("norad_id,std_mag\n5,4.25\n");
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].norad_id, 5);
    EXPECT_EQ(rows[0].std_magnitude, 4.25);
    EXPECT_THROW(ldit::parse_magnitude_csv("norad_id,std_mag\n5,nan\n"), ldit::Error);
}

TEST(OrbitClass, Bands) {
    EXPECT_EQ(ldit::classify_orbit(15.5, 0.001), ldit::OrbitClass::LEO);
    EXPECT_EQ(ldit::classify_orbit(2.0056, 0.001), ldit::OrbitClass::MEO);
    EXPECT_EQ(ldit::classify_orbit(2.0056, 0.72), ldit::OrbitClass::HEO);
    EXPECT_EQ(ldit::classify_orbit(1.0027, 0.0002), ldit::OrbitClass::GEO);
    EXPECT_EQ(ldit::classify_orbit(1.0027, 0.1), ldit::OrbitClass::OTHER);
    EXPECT_EQ(ldit::classify_orbit(0.5, 0.0), ldit::OrbitClass::OTHER);
    for (auto c : {ldit::OrbitClass::LEO, ldit::OrbitClass::MEO, ldit::OrbitClass::GEO, ldit::OrbitClass::HEO,
                   ldit::OrbitClass::OTHER}) {
        EXPECT_EQ(ldit::orbit_class_from_string(ldit::to_string(c)), c);
    }
}

namespace {

ldit::TleRecord tle_for(int id, double day) {
    const auto rec = ldit::parse_tle_lines(
        "1 00005U 58002B   00179.78495062  .00000023  00000-0  28098-4 0  4753",
        "2 00005  34.2682 348.7242 1859667 331.7664  19.3264 10.82419157413667");
    auto t = rec;
    t.norad_id = id;
    t.epoch_day = day;
    t.epoch = ldit::UtcTime::from_year_and_day(t.epoch_year, day);
    return t;
}

} // namespace

TEST(BuildCatalog, MergesSourcesAndKeepsLatestElements) {
    std::vector<ldit::TleRecord> tles{tle_for(2, 100.0), tle_for(1, 50.0), tle_for(2, 120.0)};
    std::vector<ldit::RcsRow> rcs{{1, "b", 2.0}, {1, "a", 4.0}, {3, "a", 1.0}};
    std::vector<ldit::MetadataRow> meta{{1, "z", "ZNAME", "OWN-Z", std::nullopt, std::nullopt},
                                        {1, "a", std::nullopt, "OWN-A", "OP", std::nullopt}};
    const auto cat = ldit::build_catalog(tles, rcs, meta);
    ASSERT_EQ(cat.size(), 2u);
    EXPECT_EQ(cat.entries[0].norad_id, 1);
    EXPECT_EQ(cat.entries[0].rcs_dbsm, 4.0);
    EXPECT_EQ(cat.entries[0].owner, "OWN-A");
    EXPECT_EQ(cat.entries[0].operator_name, "OP");
    EXPECT_EQ(cat.entries[0].name, "ZNAME");
    EXPECT_EQ(cat.entries[1].norad_id, 2);
    EXPECT_TRUE(cat.entries[1].rcs_missing);
    EXPECT_DOUBLE_EQ(cat.tles[1].epoch_day, 120.0);
    EXPECT_FALSE(cat.diagnostics.empty());  // duplicate element set and unknown object 3
}

TEST(BuildCatalog, JsonRoundTripAndSnapshotId) {
    std::vector<ldit::TleRecord> tles{tle_for(1, 50.0), tle_for(2, 60.0)};
    const auto cat = ldit::build_catalog(tles, {{1, "a", 4.0}}, {});
    const auto j = ldit::catalog_to_json(cat);
    const auto back = ldit::catalog_from_json(j);
    EXPECT_EQ(back.entries, cat.entries);
    EXPECT_EQ(ldit::catalog_to_json(back).dump(), j.dump());
    EXPECT_EQ(ldit::snapshot_id(back), ldit::snapshot_id(cat));
    EXPECT_EQ(ldit::snapshot_id(cat).size(), 64u);
}
