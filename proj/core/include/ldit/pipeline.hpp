#pragma once

#include <ldit/catalog.hpp>
#include <ldit/config.hpp>
#include <ldit/error.hpp>
#include <ldit/ledger.hpp>
#include <ldit/scoring.hpp>
#include <ldit/trackability.hpp>

#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace ldit {

// Process exit codes shared by every command.
enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitInputError = 2,
    kExitOfflineConflict = 3,
    kExitDegenerate = 4,
};

int exit_code_for(ErrorKind kind) noexcept;

struct RunConfig {
    std::filesystem::path tle_path;
    std::filesystem::path rcs_path;
    std::optional<std::filesystem::path> metadata_path;
    std::optional<std::filesystem::path> magnitudes_path;
    std::filesystem::path stations_path;
    std::optional<std::string> tle_url;   // fetched through the cache instead of tle_path
    std::optional<std::string> rcs_url;
    std::optional<std::filesystem::path> cache_dir; // default <out>/cache

    int k = 60;
    std::uint64_t cluster_seed = 42;
    TrackabilityConfig trackability;

    std::filesystem::path out_dir = "out";
    std::optional<std::filesystem::path> ledger_path; // default <out>/ledger.ldit
    bool offline = false;

    std::filesystem::path catalog_path() const { return out_dir / "catalog.json"; }
    std::filesystem::path effective_ledger_path() const { return ledger_path.value_or(out_dir / "ledger.ldit"); }
    std::filesystem::path effective_cache_dir() const { return cache_dir.value_or(out_dir / "cache"); }

    // Keys: inputs.{tle,rcs,metadata,magnitudes,stations}, sources.{tle_url,rcs_url,cache_dir},
    // clustering.{k,seed}, trackability.{window_start,window_days,step_s,mask_deg,trials,
    // subset_fraction,seed,threads}, output.{dir,ledger}, offline. Relative paths resolve
    // against base_dir.
    void apply(const KeyValueConfig& config, const std::filesystem::path& base_dir);
    void validate() const;

    // Parameters that determine scores; thread count is left out.
    nlohmann::json fingerprint() const;
};

struct IngestSummary {
    std::size_t tle_records = 0;
    std::size_t tle_rejected_groups = 0;
    std::size_t catalog_size = 0;
    std::string snapshot_id;
    nlohmann::json report;
};

// Writes <out>/catalog.json and <out>/ingest_report.json.
IngestSummary cmd_ingest(const RunConfig& config);

struct ScoreSummary {
    std::size_t scored = 0;      // cards with S_DIT
    std::size_t cards = 0;
    std::uint64_t block_index = 0;
    std::string snapshot_id;
};

// Runs every scoring stage on <out>/catalog.json, writes the artifacts and
// appends one block to the ledger. Clock is injectable for tests.
ScoreSummary cmd_score(const RunConfig& config, const Clock& clock = system_clock_seconds);

struct RankTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_csv() const;
    std::string to_text() const;
};

// Ranks <out>/scores.csv by key, or <out>/entities_<role>.csv by mean S_DIT
// when a role is given. Writes <out>/rank_<key>.csv or
// <out>/rank_entities_<role>.csv as well.
RankTable cmd_rank(const RunConfig& config, const std::string& key, std::size_t top_n, bool descending,
                   const std::optional<std::string>& role);

// Exclusive advisory lock on <dir>/.ldit.lock held for the object lifetime.
class OutputLock {
public:
    explicit OutputLock(const std::filesystem::path& dir);
    ~OutputLock();
    OutputLock(const OutputLock&) = delete;
    OutputLock& operator=(const OutputLock&) = delete;

private:
    int fd_ = -1;
};

} // namespace ldit
