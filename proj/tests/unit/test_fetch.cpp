#include <ldit/digest.hpp>
#include <ldit/error.hpp>
#include <ldit/fetch.hpp>

#include <httplib.h>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <thread>

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    return dir;
}

} // namespace

TEST(Fetch, CacheKeyIsUrlDigest) {
    const auto dir = fresh_dir("ldit_fetch_key");
    const ldit::CachedFetcher f(dir, true, std::nullopt);
    const std::string url = "https://example.invalid/catalog.tle";
    EXPECT_EQ(f.cache_path(url), dir / (ldit::to_hex(ldit::sha256(url)) + ".cache"));
}

TEST(Fetch, OfflineMissAndHit) {
    const auto dir = fresh_dir("ldit_fetch_offline");
    ldit::CachedFetcher f(dir, true, std::nullopt);
    const std::string url = "https://example.invalid/rcs.csv";
    try {
        f.fetch(url);
        FAIL();
    } catch (const ldit::Error& e) {
        EXPECT_EQ(e.kind(), ldit::ErrorKind::OfflineCacheMiss);
    }
    std::filesystem::create_directories(dir);
    std::ofstream(f.cache_path(url)) << "cached body";
    EXPECT_TRUE(f.is_cached(url));
    EXPECT_EQ(f.fetch(url), "cached body");
    std::filesystem::remove_all(dir);
}

TEST(Fetch, DownloadsOnceThenServesFromCache) {
    httplib::Server server;
    int hits = 0;
    std::string login_identity;
    server.Get("/data.tle", [&](const httplib::Request&, httplib::Response& res) {
        ++hits;
        res.set_content("payload", "text/plain");
    });
    server.Post("/ajaxauth/login", [&](const httplib::Request& req, httplib::Response& res) {
        login_identity = req.get_param_value("identity");
        res.set_content("query:" + req.get_param_value("query"), "text/plain");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread worker([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    const auto dir = fresh_dir("ldit_fetch_online");
    const std::string base = "http://127.0.0.1:" + std::to_string(port);
    ldit::CachedFetcher f(dir, false, std::nullopt);
    EXPECT_EQ(f.fetch(base + "/data.tle"), "payload");
    EXPECT_EQ(f.fetch(base + "/data.tle"), "payload");
    EXPECT_EQ(hits, 1);
    EXPECT_THROW(f.fetch(base + "/missing"), ldit::Error);

    ldit::CachedFetcher authed(dir, false, ldit::Credentials{"user", "secret"});
    EXPECT_EQ(authed.fetch(base + "/q/1"), "query:" + base + "/q/1");
    EXPECT_EQ(login_identity, "user");

    server.stop();
    worker.join();
    std::filesystem::remove_all(dir);
}
