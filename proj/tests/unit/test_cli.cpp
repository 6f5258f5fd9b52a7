#include <ldit/csv.hpp>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace {

const std::filesystem::path kFixtures(LDIT_FIXTURE_DIR);

struct RunResult {
    int code = -1;
    std::string out;
};

// Runs the CLI with stderr folded into stdout.
RunResult run(const std::string& args) {
    const std::string cmd = std::string(LDIT_CLI) + " " + args + " 2>&1";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

// First n three-line groups of the bundled catalog.
std::filesystem::path small_catalog(const std::filesystem::path& dir, std::size_t n) {
    std::istringstream in(ldit::csv::read_file(kFixtures / "catalog" / "catalog.tle"));
    std::ofstream out(dir / "small.tle");
    std::string line;
    for (std::size_t i = 0; i < 3 * n && std::getline(in, line); ++i) out << line << '\n';
    return dir / "small.tle";
}

std::string small_run_flags(const std::filesystem::path& dir) {
    return "--tle " + small_catalog(dir, 30).string() + " --rcs " + (kFixtures / "catalog" / "rcs.csv").string() +
           " --metadata " + (kFixtures / "catalog" / "metadata.csv").string() + " --stations " +
           (kFixtures / "leo10" / "stations.csv").string() +
           " --k 4 --window-days 0.25 --trials 3 --out " + (dir / "out").string();
}

} // namespace

TEST(Cli, MissingTleIsExitTwoWithJsonError) {
    const auto dir = scratch("ldit_cli_missing");
    const auto r = run("ingest --tle " + (dir / "none.tle").string() + " --stations x --out " + dir.string());
    EXPECT_EQ(r.code, 2);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["error"], "input-missing");
    EXPECT_EQ(j["exit_code"], 2);
}

TEST(Cli, OfflineCacheMissIsExitThree) {
    const auto dir = scratch("ldit_cli_offline");
    const auto r = run("ingest --offline --tle-url https://example.invalid/x.tle --stations x --out " + dir.string());
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.out.find("offline-cache-miss"), std::string::npos);
}

TEST(Cli, EmptyLedgerVerifies) {
    const auto dir = scratch("ldit_cli_empty");
    std::ofstream(dir / "empty.ldit").close();
    const auto r = run("verify-ledger " + (dir / "empty.ldit").string());
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("empty ledger"), std::string::npos);
}

TEST(Cli, RunRankVerifyAndTamper) {
    const auto dir = scratch("ldit_cli_run");
    const auto flags = small_run_flags(dir);
    ASSERT_EQ(run("run " + flags).code, 0);

    const auto rank = run("rank s_dit --top 10 " + flags);
    EXPECT_EQ(rank.code, 0);
    EXPECT_TRUE(std::filesystem::exists(dir / "out" / "rank_s_dit.csv"));
    const auto role = run("rank s_dit --role owner " + flags);
    EXPECT_EQ(role.code, 0);
    EXPECT_EQ(run("rank s_q " + flags).code, 2);

    const auto ledger = dir / "out" / "ledger.ldit";
    EXPECT_EQ(run("verify-ledger " + ledger.string()).code, 0);
    EXPECT_EQ(run("history " + ledger.string() + " 40001").code, 0);

    std::fstream f(ledger, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(120);
    f.put('#');
    f.close();
    const auto bad = run("verify-ledger " + ledger.string());
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.out.find("\"first_invalid_index\":0"), std::string::npos) << bad.out;
}

TEST(Cli, SingleObjectIsExitFour) {
    const auto dir = scratch("ldit_cli_single");
    const auto r = run("run --tle " + small_catalog(dir, 1).string() + " --rcs " +
                       (kFixtures / "catalog" / "rcs.csv").string() + " --stations " +
                       (kFixtures / "leo10" / "stations.csv").string() + " --out " + (dir / "out").string());
    EXPECT_EQ(r.code, 4);
    EXPECT_NE(r.out.find("degenerate-range"), std::string::npos);
}

TEST(Cli, UnknownSubcommandIsUsageError) { EXPECT_EQ(run("frobnicate").code, 2); }
