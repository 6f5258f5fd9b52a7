#include <ldit/csv.hpp>

#include <ldit/error.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ldit::csv {

std::string_view trim(std::string_view text) noexcept {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

namespace {

std::vector<std::string> split_line(std::string_view line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back(trim(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.emplace_back(trim(current));
    return fields;
}

} // namespace

Table parse(std::string_view text) {
    Table table;
    bool have_header = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        const auto content = trim(line);
        if (content.empty() || content.front() == '#') {
            if (end == text.size()) break;
            continue;
        }
        if (!have_header) {
            table.header = split_line(content);
            have_header = true;
        } else {
            table.rows.push_back(Row{line_no, split_line(line)});
        }
        if (end == text.size()) break;
    }
    return table;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::InputMissing, "cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Table parse_with_header(std::string_view text, std::string_view expected_header,
                        std::string_view source_name) {
    Table table = parse(text);
    const auto expected = split_line(expected_header);
    if (table.header.empty() && table.rows.empty()) {
        throw Error(ErrorKind::InvalidInput, std::string(source_name) + ": missing header '" +
                                                 std::string(expected_header) + "'");
    }
    if (table.header != expected) {
        throw Error(ErrorKind::InvalidInput, std::string(source_name) + ": expected header '" +
                                                 std::string(expected_header) + "'");
    }
    for (const auto& row : table.rows) {
        if (row.fields.size() != expected.size()) {
            throw Error(ErrorKind::InvalidInput, std::string(source_name) + ":" +
                                                     std::to_string(row.line_no) + ": expected " +
                                                     std::to_string(expected.size()) + " fields");
        }
    }
    return table;
}

Table read_with_header(const std::filesystem::path& path, std::string_view expected_header) {
    return parse_with_header(read_file(path), expected_header, path.string());
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string join(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(',');
        out += escape(fields[i]);
    }
    return out;
}

std::string fixed6(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    // Avoid "-0.000000" in artifacts.
    if (std::string_view(buf) == "-0.000000") {
        return "0.000000";
    }
    return buf;
}

std::string fixed6(const std::optional<double>& value) {
    return value ? fixed6(*value) : std::string();
}

double parse_double(std::string_view text) {
    text = trim(text);
    double value = 0.0;
    const char* first = text.data();
    if (!text.empty() && text.front() == '+') ++first;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, end, value);
    if (text.empty() || ec != std::errc() || ptr != end) {
        throw Error(ErrorKind::InvalidInput, "not a number: '" + std::string(text) + "'");
    }
    return value;
}

std::optional<double> parse_optional_double(std::string_view text) {
    text = trim(text);
    if (text.empty()) {
        return std::nullopt;
    }
    return parse_double(text);
}

long long parse_int(std::string_view text) {
    text = trim(text);
    long long value = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc() || ptr != end) {
        throw Error(ErrorKind::InvalidInput, "not an integer: '" + std::string(text) + "'");
    }
    return value;
}

} // namespace ldit::csv
