#include <ldit/fetch.hpp>

#include <ldit/csv.hpp>
#include <ldit/digest.hpp>
#include <ldit/error.hpp>

#include <httplib.h>

#include <cstdlib>
#include <fstream>

namespace ldit {

std::optional<Credentials> credentials_from_env() {
    const char* user = std::getenv("LDIT_ST_USER");
    const char* pass = std::getenv("LDIT_ST_PASS");
    if (!user || !pass || !*user || !*pass) return std::nullopt;
    return Credentials{user, pass};
}

CachedFetcher::CachedFetcher(std::filesystem::path cache_dir, bool offline, std::optional<Credentials> credentials)
    : cache_dir_(std::move(cache_dir)), offline_(offline), credentials_(std::move(credentials)) {}

std::filesystem::path CachedFetcher::cache_path(const std::string& url) const {
    return cache_dir_ / (to_hex(sha256(url)) + ".cache");
}

bool CachedFetcher::is_cached(const std::string& url) const {
    return std::filesystem::is_regular_file(cache_path(url));
}

std::string CachedFetcher::fetch(const std::string& url) {
    const auto path = cache_path(url);
    if (std::filesystem::is_regular_file(path)) return csv::read_file(path);
    if (offline_) {
        throw Error(ErrorKind::OfflineCacheMiss, "offline mode and no cached copy of " + url);
    }
    const auto body = download(url);
    std::filesystem::create_directories(cache_dir_);
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        out << body;
        if (!out) throw Error(ErrorKind::InvalidInput, "cannot write cache file " + tmp);
    }
    std::filesystem::rename(tmp, path);
    return body;
}

std::string CachedFetcher::download(const std::string& url) const {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw Error(ErrorKind::InvalidInput, "not an absolute URL: " + url);
    }
    const auto path_start = url.find('/', scheme_end + 3);
    const auto origin = url.substr(0, path_start);
    const auto target = path_start == std::string::npos ? std::string("/") : url.substr(path_start);

    httplib::Client client(origin);
    client.set_follow_location(true);
    client.set_connection_timeout(30);
    client.set_read_timeout(120);

    httplib::Result res;
    if (credentials_) {
        // Space-Track style: authenticate and run the query in one POST.
        httplib::Params form{{"identity", credentials_->user},
                             {"password", credentials_->password},
                             {"query", url}};
        res = client.Post("/ajaxauth/login", form);
    } else {
        res = client.Get(target);
    }
    if (!res) {
        throw Error(ErrorKind::Network, "request to " + origin + " failed: " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
        throw Error(ErrorKind::Network, "GET " + url + " returned HTTP " + std::to_string(res->status));
    }
    return res->body;
}

} // namespace ldit
