#pragma once

#include <ldit/tle.hpp>

#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ldit {

enum class OrbitClass { LEO, MEO, GEO, HEO, OTHER };

std::string_view to_string(OrbitClass c) noexcept;
OrbitClass orbit_class_from_string(std::string_view s);

// Bands by period P (minutes) and eccentricity e, first match wins:
//   LEO   P < 128 and e < 0.25
//   HEO   e >= 0.25 and P > 128
//   MEO   128 <= P < 1300
//   GEO   1300 <= P <= 1500 and e < 0.05
//   OTHER everything else
OrbitClass classify_orbit(double mean_motion_rev_per_day, double eccentricity) noexcept;

struct RcsSource {
    std::string source;
    std::optional<double> dbsm; // absent when the source lists the object without a value

    friend bool operator==(const RcsSource&, const RcsSource&) = default;
};

struct CatalogEntry {
    int norad_id = 0;
    std::string name;
    std::optional<double> rcs_dbsm;
    std::vector<RcsSource> rcs_sources; // sorted by source name after merging
    bool rcs_missing = true;
    std::optional<std::string> owner;
    std::optional<std::string> operator_name;
    std::optional<std::string> manufacturer;
    OrbitClass orbit_class = OrbitClass::OTHER;

    friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

// One entry per norad_id. RCS is the maximum over present source values;
// text fields come from the lexicographically first source that has them.
// Per-source inputs name their source through rcs_sources.front().source.
// Output is ordered by norad_id.
std::vector<CatalogEntry> merge_rcs(const std::vector<CatalogEntry>& per_source);

double m2_to_dbsm(double square_meters);

struct RcsRow {
    int norad_id = 0;
    std::string source;
    std::optional<double> dbsm;
};

// Header `norad_id,source,rcs,unit`; unit is dbsm or m2, rcs may be empty.
std::vector<RcsRow> parse_rcs_csv(std::string_view text, std::string_view source_name = "rcs");
std::vector<RcsRow> load_rcs_csv(const std::filesystem::path& path);

struct MetadataRow {
    int norad_id = 0;
    std::string source;
    std::optional<std::string> name;
    std::optional<std::string> owner;
    std::optional<std::string> operator_name;
    std::optional<std::string> manufacturer;
};

// Header `norad_id,source,name,owner,operator,manufacturer`; empty means absent.
std::vector<MetadataRow> parse_metadata_csv(std::string_view text, std::string_view source_name = "metadata");
std::vector<MetadataRow> load_metadata_csv(const std::filesystem::path& path);

struct MagnitudeObservation {
    int norad_id = 0;
    double std_magnitude = 0.0;
};

// Header `norad_id,std_mag`.
std::vector<MagnitudeObservation> parse_magnitude_csv(std::string_view text, std::string_view source_name = "magnitudes");
std::vector<MagnitudeObservation> load_magnitude_csv(const std::filesystem::path& path);

struct IngestDiagnostic {
    std::string kind;
    std::string message;
};

// Entries and element sets aligned by index, ordered by norad_id.
struct Catalog {
    std::vector<CatalogEntry> entries;
    std::vector<TleRecord> tles;
    std::vector<IngestDiagnostic> diagnostics;

    std::size_t size() const noexcept { return entries.size(); }
};

// The element set defines catalog membership. Duplicate element sets keep the
// latest epoch; RCS or metadata rows for unknown objects are reported and
// skipped.
Catalog build_catalog(const std::vector<TleRecord>& tles, const std::vector<RcsRow>& rcs,
                      const std::vector<MetadataRow>& metadata);

// Canonical JSON with sorted keys; element sets are stored as TLE lines.
nlohmann::json catalog_to_json(const Catalog& catalog);
Catalog catalog_from_json(const nlohmann::json& json);

// SHA-256 hex of the compact canonical catalog JSON.
std::string snapshot_id(const Catalog& catalog);

} // namespace ldit
