#include <ldit/error.hpp>
#include <ldit/stations.hpp>

#include <gtest/gtest.h>

namespace {
constexpr const char* kHeader = "station_id,latitude_deg,longitude_deg,altitude_m,min_elevation_deg\n";

ldit::ErrorKind kind_of(const std::string& text) {
    try {
        ldit::parse_ground_stations(text);
    } catch (const ldit::Error& e) {
        return e.kind();
    }
    return ldit::ErrorKind::InvalidInput;
}
} // namespace

TEST(Stations, HeaderOnlyIsEmpty) { EXPECT_TRUE(ldit::parse_ground_stations(kHeader).empty()); }

TEST(Stations, LatitudeOutOfRange) {
    EXPECT_EQ(kind_of(std::string(kHeader) + "X,91,0,0,10\n"), ldit::ErrorKind::CoordinateOutOfRange);
    EXPECT_EQ(kind_of(std::string(kHeader) + "X,0,180.5,0,10\n"), ldit::ErrorKind::CoordinateOutOfRange);
}

TEST(Stations, DuplicateRejected) {
    EXPECT_EQ(kind_of(std::string(kHeader) + "X,1,2,3,10\nX,4,5,6,10\n"), ldit::ErrorKind::DuplicateStation);
}

TEST(Stations, DefaultMask) {
    const auto s = ldit::parse_ground_stations(std::string(kHeader) + "X,1,2,3,\n");
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].min_elevation_deg, ldit::kDefaultMinElevationDeg);
    EXPECT_EQ(s[0].altitude_m, 3.0);
}

TEST(Stations, BundledNetworkHasTwentyFive) {
    const auto s = ldit::load_ground_stations(std::filesystem::path(LDIT_FIXTURE_DIR) / "stations.csv");
    EXPECT_EQ(s.size(), 25u);
}
