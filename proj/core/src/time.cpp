#include <ldit/time.hpp>

#include <ldit/error.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>

namespace ldit {

namespace {

double unix_days(int year, unsigned month, unsigned day) {
    using namespace std::chrono;
    const year_month_day ymd{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}};
    if (!ymd.ok()) {
        throw Error(ErrorKind::InvalidInput, "invalid calendar date");
    }
    return static_cast<double>(sys_days{ymd}.time_since_epoch().count());
}

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
    T value{};
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw Error(ErrorKind::InvalidInput, "bad " + std::string(what) + " in timestamp");
    }
    return value;
}

} // namespace

UtcTime UtcTime::from_calendar(int year, unsigned month, unsigned day,
                               int hour, int minute, double second) {
    return UtcTime(unix_days(year, month, day) * kSecondsPerDay + hour * 3600.0 + minute * 60.0 + second);
}

UtcTime UtcTime::from_year_and_day(int year, double day_of_year) {
    return UtcTime((unix_days(year, 1, 1) + day_of_year - 1.0) * kSecondsPerDay);
}

UtcTime UtcTime::parse_iso8601(std::string_view text) {
    if (!text.empty() && (text.back() == 'Z' || text.back() == 'z')) {
        text.remove_suffix(1);
    }
    if (text.size() < 10 || text[4] != '-' || text[7] != '-') {
        throw Error(ErrorKind::InvalidInput, "timestamp must look like YYYY-MM-DDTHH:MM:SS");
    }
    const int year = parse_number<int>(text.substr(0, 4), "year");
    const unsigned month = parse_number<unsigned>(text.substr(5, 2), "month");
    const unsigned day = parse_number<unsigned>(text.substr(8, 2), "day");
    if (text.size() == 10) {
        return from_calendar(year, month, day);
    }
    if (text.size() < 19 || (text[10] != 'T' && text[10] != ' ') || text[13] != ':' || text[16] != ':') {
        throw Error(ErrorKind::InvalidInput, "timestamp must look like YYYY-MM-DDTHH:MM:SS");
    }
    const int hour = parse_number<int>(text.substr(11, 2), "hour");
    const int minute = parse_number<int>(text.substr(14, 2), "minute");
    const double second = parse_number<double>(text.substr(17), "second");
    return from_calendar(year, month, day, hour, minute, second);
}

std::string UtcTime::to_iso8601() const {
    using namespace std::chrono;
    const double total_ms = std::round(seconds_ * 1000.0);
    const double day_count = std::floor(total_ms / 86400000.0);
    long long ms_of_day = static_cast<long long>(total_ms - day_count * 86400000.0);
    const year_month_day ymd{sys_days{days{static_cast<long long>(day_count)}}};
    const int hour = static_cast<int>(ms_of_day / 3600000);
    ms_of_day %= 3600000;
    const int minute = static_cast<int>(ms_of_day / 60000);
    ms_of_day %= 60000;
    const int sec = static_cast<int>(ms_of_day / 1000);
    const int milli = static_cast<int>(ms_of_day % 1000);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ",
                  static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                  static_cast<unsigned>(ymd.day()), hour, minute, sec, milli);
    return buf;
}

} // namespace ldit
