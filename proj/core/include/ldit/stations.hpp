#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ldit {

inline constexpr double kDefaultMinElevationDeg = 10.0;

struct GroundStation {
    std::string station_id;
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;
    double altitude_m = 0.0;
    double min_elevation_deg = kDefaultMinElevationDeg;
};

// Header `station_id,latitude_deg,longitude_deg,altitude_m,min_elevation_deg`.
// An empty min_elevation_deg takes the default mask. Throws DuplicateStation
// or CoordinateOutOfRange.
std::vector<GroundStation> parse_ground_stations(std::string_view text, std::string_view source_name = "stations");
std::vector<GroundStation> load_ground_stations(const std::filesystem::path& path);

} // namespace ldit
