#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace ldit {

// Minimal TOML-style key/value file:
//
//   # comment
//   top_level = "value"
//   [section]
//   key = 12.5        # becomes "section.key"
//   flag = true
//
// Values are kept as text; typed getters convert on access. Quoted strings
// have their quotes removed.
class KeyValueConfig {
public:
    static KeyValueConfig parse(std::string_view text, std::string_view source_name = "config");
    static KeyValueConfig load(const std::filesystem::path& path);

    bool contains(const std::string& key) const { return values_.count(key) != 0; }
    std::optional<std::string> get_string(const std::string& key) const;
    std::optional<double> get_double(const std::string& key) const;
    std::optional<long long> get_int(const std::string& key) const;
    std::optional<bool> get_bool(const std::string& key) const;

    void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
    const std::map<std::string, std::string>& values() const noexcept { return values_; }

private:
    std::map<std::string, std::string> values_;
};

} // namespace ldit
