#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ldit::csv {

struct Row {
    std::size_t line_no = 0;  // 1-based line in the source text
    std::vector<std::string> fields;
};

struct Table {
    std::vector<std::string> header;
    std::vector<Row> rows;
};

// RFC-4180-ish reader: comma separated, optional double quotes, '#' comment
// lines and blank lines skipped. The first non-comment line is the header.
Table parse(std::string_view text);

// Reads a file and checks that its header equals `expected_header` exactly.
// Throws InputMissing when the file cannot be opened, InvalidInput on a
// header mismatch or ragged row.
Table read_with_header(const std::filesystem::path& path, std::string_view expected_header);
Table parse_with_header(std::string_view text, std::string_view expected_header,
                        std::string_view source_name);

std::string read_file(const std::filesystem::path& path);

std::string escape(std::string_view field);
std::string join(const std::vector<std::string>& fields);

// Fixed six-decimal rendering used by every score artifact.
std::string fixed6(double value);
std::string fixed6(const std::optional<double>& value);

std::optional<double> parse_optional_double(std::string_view text);
double parse_double(std::string_view text);
long long parse_int(std::string_view text);

std::string_view trim(std::string_view text) noexcept;

} // namespace ldit::csv
