#include <ldit/tle.hpp>

#include <ldit/csv.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>

namespace ldit {

namespace {

constexpr std::size_t kLineLength = 69;

struct FieldError {
    ErrorKind kind;
    std::string field;
    std::string message;
    std::size_t line_offset; // 0 = name/line1, relative to the group start
};

class FieldReader {
public:
    FieldReader(std::string_view line, std::size_t offset) : line_(line), offset_(offset) {}

    std::string_view raw(std::size_t begin, std::size_t end) const { return line_.substr(begin, end - begin); }

    double decimal(std::size_t begin, std::size_t end, const char* field) const {
        auto text = csv::trim(raw(begin, end));
        std::string buf(text);
        // TLE decimals are often written without a leading zero (".00000023", "-.5").
        if (!buf.empty() && buf.front() == '.') buf.insert(buf.begin(), '0');
        if (buf.size() > 1 && (buf.front() == '-' || buf.front() == '+') && buf[1] == '.') buf.insert(1, "0");
        if (!buf.empty() && buf.front() == '+') buf.erase(buf.begin());
        return to_double(buf, field);
    }

    // Implied-decimal exponent notation: " 28098-4" == 0.28098e-4.
    double exponent(std::size_t begin, std::size_t end, const char* field) const {
        auto text = csv::trim(raw(begin, end));
        if (text.empty()) return 0.0;
        std::string sign;
        if (text.front() == '-' || text.front() == '+') {
            if (text.front() == '-') sign = "-";
            text.remove_prefix(1);
        }
        const auto exp_pos = text.find_last_of("+-");
        if (exp_pos == std::string_view::npos || exp_pos == 0) {
            // Some producers omit the exponent for zero values.
            return to_double(sign + "0." + std::string(text), field);
        }
        const std::string mantissa(text.substr(0, exp_pos));
        const std::string exponent(text.substr(exp_pos));
        return to_double(sign + "0." + mantissa + "e" + exponent, field);
    }

    int integer(std::size_t begin, std::size_t end, const char* field, bool blank_is_zero = false) const {
        const auto text = csv::trim(raw(begin, end));
        if (text.empty() && blank_is_zero) return 0;
        int value = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
            throw FieldError{ErrorKind::FieldOutOfRange, field, "not an integer: '" + std::string(text) + "'", offset_};
        }
        return value;
    }

    int catalog_number(std::size_t begin, std::size_t end) const {
        const auto text = csv::trim(raw(begin, end));
        if (!text.empty() && text.front() >= 'A' && text.front() <= 'Z') {
            // Alpha-5: A=10 ... Z=33, skipping I and O.
            char c = text.front();
            if (c == 'I' || c == 'O') {
                throw FieldError{ErrorKind::FieldOutOfRange, "norad_id", "invalid alpha-5 prefix", offset_};
            }
            int lead = c - 'A' + 10;
            if (c > 'I') --lead;
            if (c > 'O') --lead;
            FieldReader rest(text.substr(1), offset_);
            return lead * 10000 + rest.integer(0, text.size() - 1, "norad_id");
        }
        return integer(begin, end, "norad_id");
    }

private:
    double to_double(const std::string& text, const char* field) const {
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
            throw FieldError{ErrorKind::FieldOutOfRange, field, "not a number: '" + text + "'", offset_};
        }
        return value;
    }

    std::string_view line_;
    std::size_t offset_;
};

void require_range(bool ok, const char* field, std::size_t offset, double value) {
    if (!ok) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.8g", value);
        throw FieldError{ErrorKind::FieldOutOfRange, field, std::string("value out of range: ") + buf, offset};
    }
}

std::string_view rstrip(std::string_view s) {
    while (!s.empty() && (s.back() == ' ' || s.back() == '\r' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

// Throws FieldError. line1/line2 offsets are 0/1 relative to line 1.
TleRecord parse_pair(std::string_view line1, std::string_view line2, std::string_view name) {
    line1 = rstrip(line1);
    line2 = rstrip(line2);
    for (std::size_t i = 0; i < 2; ++i) {
        const auto line = i == 0 ? line1 : line2;
        if (line.size() < kLineLength) {
            throw FieldError{ErrorKind::TruncatedGroup, "line_length",
                             "line has " + std::to_string(line.size()) + " characters, expected 69", i};
        }
        if (line.size() > kLineLength) {
            throw FieldError{ErrorKind::FieldOutOfRange, "line_length",
                             "line has " + std::to_string(line.size()) + " characters, expected 69", i};
        }
        const int stored = line[68] - '0';
        if (stored < 0 || stored > 9) {
            throw FieldError{ErrorKind::ChecksumMismatch, "checksum", "checksum column is not a digit", i};
        }
        const int computed = tle_checksum(line);
        if (stored != computed) {
            throw FieldError{ErrorKind::ChecksumMismatch, "checksum",
                             "stored checksum " + std::to_string(stored) + " but computed " +
                                 std::to_string(computed),
                             i};
        }
    }

    TleRecord r;
    const FieldReader f1(line1, 0);
    const FieldReader f2(line2, 1);

    r.norad_id = f1.catalog_number(2, 7);
    require_range(r.norad_id > 0, "norad_id", 0, r.norad_id);
    r.classification = line1[7] == ' ' ? 'U' : line1[7];
    r.intl_designator = std::string(csv::trim(f1.raw(9, 17)));
    const int yy = f1.integer(18, 20, "epoch_year");
    require_range(yy >= 0 && yy <= 99, "epoch_year", 0, yy);
    r.epoch_year = yy < 57 ? 2000 + yy : 1900 + yy;
    r.epoch_day = f1.decimal(20, 32, "epoch_day");
    require_range(r.epoch_day >= 1.0 && r.epoch_day < 367.0, "epoch_day", 0, r.epoch_day);
    r.epoch = UtcTime::from_year_and_day(r.epoch_year, r.epoch_day);
    r.mean_motion_dot = f1.decimal(33, 43, "mean_motion_dot");
    r.mean_motion_ddot = f1.exponent(44, 52, "mean_motion_ddot");
    r.bstar = f1.exponent(53, 61, "bstar");
    r.ephemeris_type = f1.integer(62, 63, "ephemeris_type", true);
    r.element_number = f1.integer(64, 68, "element_number", true);
    r.line1_checksum = line1[68] - '0';

    const int id2 = f2.catalog_number(2, 7);
    if (id2 != r.norad_id) {
        throw FieldError{ErrorKind::FieldOutOfRange, "norad_id", "catalog numbers of line 1 and 2 differ", 1};
    }
    r.inclination = f2.decimal(8, 16, "inclination");
    require_range(r.inclination >= 0.0 && r.inclination <= 180.0, "inclination", 1, r.inclination);
    r.raan = f2.decimal(17, 25, "raan");
    require_range(r.raan >= 0.0 && r.raan < 360.0, "raan", 1, r.raan);
    {
        std::string digits(f2.raw(26, 33));
        for (auto& c : digits) {
            if (c == ' ') c = '0';
        }
        if (digits.find_first_not_of("0123456789") != std::string::npos) {
            throw FieldError{ErrorKind::FieldOutOfRange, "eccentricity", "not a number: '" + digits + "'", 1};
        }
        // Implied leading decimal point.
        r.eccentricity = std::stod("0." + digits);
    }
    require_range(r.eccentricity >= 0.0 && r.eccentricity < 1.0, "eccentricity", 1, r.eccentricity);
    r.arg_perigee = f2.decimal(34, 42, "arg_perigee");
    require_range(r.arg_perigee >= 0.0 && r.arg_perigee < 360.0, "arg_perigee", 1, r.arg_perigee);
    r.mean_anomaly = f2.decimal(43, 51, "mean_anomaly");
    require_range(r.mean_anomaly >= 0.0 && r.mean_anomaly < 360.0, "mean_anomaly", 1, r.mean_anomaly);
    r.mean_motion = f2.decimal(52, 63, "mean_motion");
    require_range(r.mean_motion > 0.0, "mean_motion", 1, r.mean_motion);
    r.revolution_number = f2.integer(63, 68, "revolution_number", true);
    r.line2_checksum = line2[68] - '0';

    r.name = std::string(csv::trim(name));
    if (r.name.empty()) {
        r.name = std::to_string(r.norad_id);
    }
    return r;
}

bool looks_like_line(std::string_view line, char which) {
    return line.size() >= 2 && line[0] == which && line[1] == ' ';
}

std::string format_catalog_number(int id) {
    char buf[32];
    if (id >= 100000) {
        int lead = id / 10000;
        char c = static_cast<char>('A' + (lead - 10));
        if (c >= 'I') ++c;
        if (c >= 'O') ++c;
        std::snprintf(buf, sizeof buf, "%c%04d", c, id % 10000);
    } else {
        std::snprintf(buf, sizeof buf, "%05d", id);
    }
    return buf;
}

std::string format_exponent(double value) {
    char buf[32];
    const char sign = value < 0.0 ? '-' : ' ';
    const double mag = std::fabs(value);
    if (mag == 0.0) {
        std::snprintf(buf, sizeof buf, "%c00000-0", sign);
        return buf;
    }
    int exponent = static_cast<int>(std::floor(std::log10(mag))) + 1;
    long long mantissa = std::llround(mag / std::pow(10.0, exponent - 5));
    if (mantissa >= 100000) {
        mantissa /= 10;
        ++exponent;
    }
    if (mantissa < 10000) {
        mantissa *= 10;
        --exponent;
    }
    if (exponent < -9 || exponent > 9) {
        throw Error(ErrorKind::FieldOutOfRange, "exponent field out of range");
    }
    std::snprintf(buf, sizeof buf, "%c%05lld%c%d", sign, mantissa, exponent < 0 ? '-' : '+', std::abs(exponent));
    return buf;
}

std::string format_ndot(double value) {
    char buf[32];
    const long long scaled = std::llround(std::fabs(value) * 1e8);
    if (scaled >= 100000000) {
        throw Error(ErrorKind::FieldOutOfRange, "mean_motion_dot out of range");
    }
    std::snprintf(buf, sizeof buf, "%c.%08lld", value < 0.0 ? '-' : ' ', scaled);
    return buf;
}

} // namespace

std::size_t TleParseResult::accounted_lines() const noexcept {
    std::size_t n = blank_lines;
    for (auto c : record_lines) n += c;
    for (const auto& d : diagnostics) n += d.line_count;
    return n;
}

int tle_checksum(std::string_view line) noexcept {
    int sum = 0;
    const auto n = std::min<std::size_t>(line.size(), 68);
    for (std::size_t i = 0; i < n; ++i) {
        const char c = line[i];
        if (c >= '0' && c <= '9') {
            sum += c - '0';
        } else if (c == '-') {
            sum += 1;
        }
    }
    return sum % 10;
}

TleParseResult parse_tle(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        lines.push_back(text.substr(pos, end - pos));
        pos = end + 1;
    }

    TleParseResult result;
    result.total_lines = lines.size();

    constexpr std::size_t kNoName = static_cast<std::size_t>(-1);
    std::size_t pending_name = kNoName; // index into lines
    auto flush_orphan_name = [&] {
        if (pending_name != kNoName) {
            result.diagnostics.push_back({ErrorKind::TruncatedGroup, pending_name + 1, 1, {},
                                          "name line without element lines"});
            pending_name = kNoName;
        }
    };

    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto line = rstrip(lines[i]);
        if (csv::trim(line).empty()) {
            // A blank line terminates a pending name.
            flush_orphan_name();
            ++result.blank_lines;
            continue;
        }
        if (looks_like_line(line, '1')) {
            if (i + 1 >= lines.size() || !looks_like_line(rstrip(lines[i + 1]), '2')) {
                const std::size_t first = pending_name != kNoName ? pending_name : i;
                result.diagnostics.push_back({ErrorKind::TruncatedGroup, first + 1, i - first + 1, {},
                                              "line 1 without a following line 2"});
                pending_name = kNoName;
                continue;
            }
            std::string_view name;
            std::size_t first = i;
            if (pending_name != kNoName) {
                name = csv::trim(lines[pending_name]);
                if (name.size() >= 2 && name[0] == '0' && name[1] == ' ') name.remove_prefix(2);
                first = pending_name;
            }
            const std::size_t consumed = i + 2 - first;
            try {
                result.records.push_back(parse_pair(lines[i], lines[i + 1], name));
                result.record_lines.push_back(consumed);
            } catch (const FieldError& e) {
                result.diagnostics.push_back({e.kind, i + 1 + e.line_offset, consumed, e.field, e.message});
            }
            pending_name = kNoName;
            ++i;
            continue;
        }
        if (looks_like_line(line, '2')) {
            flush_orphan_name();
            result.diagnostics.push_back({ErrorKind::TruncatedGroup, i + 1, 1, {}, "line 2 without a preceding line 1"});
            continue;
        }
        flush_orphan_name();
        pending_name = i;
    }
    flush_orphan_name();
    return result;
}

TleRecord parse_tle_lines(std::string_view line1, std::string_view line2, std::string_view name) {
    try {
        return parse_pair(line1, line2, name);
    } catch (const FieldError& e) {
        std::string msg = "TLE line " + std::to_string(e.line_offset + 1) + ": ";
        if (!e.field.empty()) msg += e.field + ": ";
        throw Error(e.kind, msg + e.message);
    }
}

std::pair<std::string, std::string> format_tle(const TleRecord& r) {
    char buf[128];
    std::string intl = r.intl_designator.substr(0, 8);
    intl.resize(8, ' ');
    const int yy = r.epoch_year % 100;
    std::snprintf(buf, sizeof buf, "1 %s%c %s %02d%012.8f %s %s %s %d %4d",
                  format_catalog_number(r.norad_id).c_str(), r.classification, intl.c_str(), yy,
                  r.epoch_day, format_ndot(r.mean_motion_dot).c_str(),
                  format_exponent(r.mean_motion_ddot).c_str(), format_exponent(r.bstar).c_str(),
                  r.ephemeris_type % 10, r.element_number % 10000);
    std::string line1(buf);
    line1.push_back(static_cast<char>('0' + tle_checksum(line1)));

    const long long ecc = std::llround(r.eccentricity * 1e7);
    std::snprintf(buf, sizeof buf, "2 %s %8.4f %8.4f %07lld %8.4f %8.4f %11.8f%5d",
                  format_catalog_number(r.norad_id).c_str(), r.inclination, r.raan, ecc,
                  r.arg_perigee, r.mean_anomaly, r.mean_motion, r.revolution_number % 100000);
    std::string line2(buf);
    line2.push_back(static_cast<char>('0' + tle_checksum(line2)));

    if (line1.size() != kLineLength || line2.size() != kLineLength) {
        throw Error(ErrorKind::FieldOutOfRange, "record for " + std::to_string(r.norad_id) +
                                                    " does not fit the 69-column layout");
    }
    return {std::move(line1), std::move(line2)};
}

std::string format_tle_catalog(const std::vector<TleRecord>& records) {
    std::string out;
    for (const auto& r : records) {
        const auto [l1, l2] = format_tle(r);
        out += r.name;
        out += '\n';
        out += l1;
        out += '\n';
        out += l2;
        out += '\n';
    }
    return out;
}

} // namespace ldit
