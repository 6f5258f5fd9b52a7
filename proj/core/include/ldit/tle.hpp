#pragma once

#include <ldit/error.hpp>
#include <ldit/time.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ldit {

// One parsed two-line element set. Angles are degrees, mean motion is
// revolutions/day, bstar is 1/earth-radii; mean_motion_dot and
// mean_motion_ddot are stored exactly as printed (rev/day^2 and rev/day^3).
struct TleRecord {
    int norad_id = 0;
    std::string name;
    char classification = 'U';
    std::string intl_designator;
    int epoch_year = 2000;  // four digits
    double epoch_day = 1.0; // 1-based fractional day of year
    UtcTime epoch;
    double mean_motion_dot = 0.0;
    double mean_motion_ddot = 0.0;
    double bstar = 0.0;
    int ephemeris_type = 0;
    int element_number = 0;
    double inclination = 0.0;
    double raan = 0.0;
    double eccentricity = 0.0;
    double arg_perigee = 0.0;
    double mean_anomaly = 0.0;
    double mean_motion = 0.0;
    int revolution_number = 0;
    int line1_checksum = 0;
    int line2_checksum = 0;

    friend bool operator==(const TleRecord&, const TleRecord&) = default;
};

struct TleDiagnostic {
    ErrorKind kind = ErrorKind::TruncatedGroup;
    std::size_t line_no = 0;    // first offending line, 1-based
    std::size_t line_count = 1; // input lines consumed by this diagnostic
    std::string field;          // set for FieldOutOfRange
    std::string message;
};

struct TleParseResult {
    std::vector<TleRecord> records;
    std::vector<std::size_t> record_lines; // input lines consumed per record (2 or 3)
    std::vector<TleDiagnostic> diagnostics;
    std::size_t blank_lines = 0;
    std::size_t total_lines = 0;

    // Every input line is either part of a record, part of a diagnostic or blank.
    std::size_t accounted_lines() const noexcept;
};

// Mod-10 checksum over the first 68 characters: digits count their value,
// '-' counts 1, everything else 0.
int tle_checksum(std::string_view line) noexcept;

// Total parser: never throws on malformed content, reports it instead.
// Accepts 2-line groups and 3-line groups (name line first; a leading "0 "
// on the name line is dropped).
TleParseResult parse_tle(std::string_view text);

// Strict single-record parse; throws Error with the diagnostic's kind.
TleRecord parse_tle_lines(std::string_view line1, std::string_view line2,
                          std::string_view name = {});

// Formats a record as two 69-character lines with freshly computed checksums.
std::pair<std::string, std::string> format_tle(const TleRecord& record);

// Three-line text ("name\nline1\nline2\n") for a whole catalog.
std::string format_tle_catalog(const std::vector<TleRecord>& records);

} // namespace ldit
