#include <ldit/stations.hpp>

#include <ldit/csv.hpp>
#include <ldit/error.hpp>

#include <cmath>
#include <set>

namespace ldit {

std::vector<GroundStation> parse_ground_stations(std::string_view text, std::string_view source_name) {
    const auto table = csv::parse_with_header(
        text, "station_id,latitude_deg,longitude_deg,altitude_m,min_elevation_deg", source_name);
    std::vector<GroundStation> out;
    std::set<std::string> seen;
    for (const auto& r : table.rows) {
        const auto where = std::string(source_name) + ":" + std::to_string(r.line_no);
        GroundStation s;
        s.station_id = r.fields[0];
        if (s.station_id.empty()) {
            throw Error(ErrorKind::InvalidInput, where + ": empty station_id");
        }
        try {
            s.latitude_deg = csv::parse_double(r.fields[1]);
            s.longitude_deg = csv::parse_double(r.fields[2]);
            s.altitude_m = csv::parse_double(r.fields[3]);
            s.min_elevation_deg = csv::parse_optional_double(r.fields[4]).value_or(kDefaultMinElevationDeg);
        } catch (const Error&) {
            throw Error(ErrorKind::InvalidInput, where + ": non-numeric station field");
        }
        if (!(s.latitude_deg >= -90.0 && s.latitude_deg <= 90.0)) {
            throw Error(ErrorKind::CoordinateOutOfRange, where + ": latitude outside [-90, 90]");
        }
        if (!(s.longitude_deg >= -180.0 && s.longitude_deg <= 180.0)) {
            throw Error(ErrorKind::CoordinateOutOfRange, where + ": longitude outside [-180, 180]");
        }
        if (!std::isfinite(s.altitude_m)) {
            throw Error(ErrorKind::CoordinateOutOfRange, where + ": altitude not finite");
        }
        if (!(s.min_elevation_deg >= -90.0 && s.min_elevation_deg <= 90.0)) {
            throw Error(ErrorKind::CoordinateOutOfRange, where + ": min_elevation_deg outside [-90, 90]");
        }
        if (!seen.insert(s.station_id).second) {
            throw Error(ErrorKind::DuplicateStation, where + ": duplicate station_id '" + s.station_id + "'");
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<GroundStation> load_ground_stations(const std::filesystem::path& path) {
    return parse_ground_stations(csv::read_file(path), path.string());
}

} // namespace ldit
