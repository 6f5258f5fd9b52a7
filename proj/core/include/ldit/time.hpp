#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace ldit {

inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kUnixEpochJulianDate = 2440587.5;

// UTC instant stored as seconds since 1970-01-01T00:00:00Z. Leap seconds are
// ignored, as in the two-line element convention.
class UtcTime {
public:
    constexpr UtcTime() = default;

    static constexpr UtcTime from_unix_seconds(double s) noexcept { return UtcTime(s); }
    static constexpr UtcTime from_julian_date(double jd) noexcept {
        return UtcTime((jd - kUnixEpochJulianDate) * kSecondsPerDay);
    }
    static UtcTime from_calendar(int year, unsigned month, unsigned day,
                                 int hour = 0, int minute = 0, double second = 0.0);
    // day_of_year is 1-based with a fractional part, as in TLE epochs.
    static UtcTime from_year_and_day(int year, double day_of_year);
    // Accepts "YYYY-MM-DDTHH:MM:SS[.fff][Z]" and "YYYY-MM-DD".
    static UtcTime parse_iso8601(std::string_view text);

    constexpr double unix_seconds() const noexcept { return seconds_; }
    constexpr double julian_date() const noexcept {
        return seconds_ / kSecondsPerDay + kUnixEpochJulianDate;
    }

    constexpr UtcTime plus_seconds(double s) const noexcept { return UtcTime(seconds_ + s); }
    constexpr double seconds_since(UtcTime other) const noexcept { return seconds_ - other.seconds_; }

    // Millisecond resolution, always with a trailing 'Z'.
    std::string to_iso8601() const;

    friend constexpr auto operator<=>(const UtcTime&, const UtcTime&) = default;

private:
    explicit constexpr UtcTime(double s) noexcept : seconds_(s) {}
    double seconds_ = 0.0;
};

} // namespace ldit
