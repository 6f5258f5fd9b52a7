#pragma once

#include <filesystem>
#include <optional>
#include <string>

namespace ldit {

struct Credentials {
    std::string user;
    std::string password;
};

// Reads LDIT_ST_USER / LDIT_ST_PASS; absent unless both are set.
std::optional<Credentials> credentials_from_env();

// Fetches remote catalog payloads through a content cache. Every payload is
// stored under cache_dir keyed by the SHA-256 of its URL, and a cached copy is
// always preferred. Offline mode never touches the network and reports a
// cache miss as OfflineCacheMiss.
class CachedFetcher {
public:
    CachedFetcher(std::filesystem::path cache_dir, bool offline,
                  std::optional<Credentials> credentials = credentials_from_env());

    std::string fetch(const std::string& url);
    bool is_cached(const std::string& url) const;
    std::filesystem::path cache_path(const std::string& url) const;

private:
    std::string download(const std::string& url) const;

    std::filesystem::path cache_dir_;
    bool offline_;
    std::optional<Credentials> credentials_;
};

} // namespace ldit
