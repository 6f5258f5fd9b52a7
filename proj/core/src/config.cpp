#include <ldit/config.hpp>

#include <ldit/csv.hpp>
#include <ldit/error.hpp>

namespace ldit {

namespace {

std::string_view strip_comment(std::string_view line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

} // namespace

KeyValueConfig KeyValueConfig::parse(std::string_view text, std::string_view source_name) {
    KeyValueConfig config;
    std::string section;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const auto line = csv::trim(strip_comment(text.substr(pos, end - pos)));
        pos = end + 1;
        ++line_no;
        if (line.empty()) continue;

        const auto where = std::string(source_name) + ":" + std::to_string(line_no);
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw Error(ErrorKind::InvalidInput, where + ": malformed section header");
            }
            section = std::string(csv::trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorKind::InvalidInput, where + ": expected key = value");
        }
        const auto key = csv::trim(line.substr(0, eq));
        auto value = csv::trim(line.substr(eq + 1));
        if (key.empty()) {
            throw Error(ErrorKind::InvalidInput, where + ": empty key");
        }
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        const std::string full_key = section.empty() ? std::string(key) : section + "." + std::string(key);
        config.values_[full_key] = std::string(value);
    }
    return config;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
    return parse(csv::read_file(path), path.string());
}

std::optional<std::string> KeyValueConfig::get_string(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::optional<double> KeyValueConfig::get_double(const std::string& key) const {
    const auto s = get_string(key);
    if (!s) return std::nullopt;
    try {
        return csv::parse_double(*s);
    } catch (const Error&) {
        throw Error(ErrorKind::InvalidInput, "config key '" + key + "' is not a number");
    }
}

std::optional<long long> KeyValueConfig::get_int(const std::string& key) const {
    const auto s = get_string(key);
    if (!s) return std::nullopt;
    try {
        return csv::parse_int(*s);
    } catch (const Error&) {
        throw Error(ErrorKind::InvalidInput, "config key '" + key + "' is not an integer");
    }
}

std::optional<bool> KeyValueConfig::get_bool(const std::string& key) const {
    const auto s = get_string(key);
    if (!s) return std::nullopt;
    if (*s == "true" || *s == "1" || *s == "yes") return true;
    if (*s == "false" || *s == "0" || *s == "no") return false;
    throw Error(ErrorKind::InvalidInput, "config key '" + key + "' is not a boolean");
}

} // namespace ldit
