#include <ldit/ledger.hpp>
#include <ldit/pipeline.hpp>
#include <ldit/time.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct Flags {
    std::string config;
    std::string tle, rcs, metadata, magnitudes, stations;
    std::string tle_url, rcs_url, cache_dir;
    std::optional<int> k;
    std::optional<std::uint64_t> cluster_seed;
    std::string window_start;
    std::optional<double> window_days, step_s, mask_deg, subset_fraction;
    std::optional<int> trials;
    std::optional<std::uint64_t> track_seed;
    std::optional<unsigned> threads;
    std::string out, ledger;
    bool offline = false;
};

void add_run_flags(CLI::App& app, Flags& f) {
    app.add_option("--config", f.config, "key-value config file; flags override it");
    app.add_option("--tle", f.tle, "TLE catalog file");
    app.add_option("--rcs", f.rcs, "RCS CSV (norad_id,source,rcs,unit)");
    app.add_option("--metadata", f.metadata, "entity metadata CSV");
    app.add_option("--magnitudes", f.magnitudes, "standard magnitude CSV (norad_id,std_mag)");
    app.add_option("--stations", f.stations, "ground station CSV");
    app.add_option("--tle-url", f.tle_url, "fetch TLEs through the cache instead of --tle");
    app.add_option("--rcs-url", f.rcs_url, "fetch RCS CSV through the cache instead of --rcs");
    app.add_option("--cache-dir", f.cache_dir, "fetch cache directory (default <out>/cache)");
    app.add_option("--k", f.k, "cluster count");
    app.add_option("--cluster-seed", f.cluster_seed, "k-means seed");
    app.add_option("--window-start", f.window_start, "ISO-8601 UTC start (default latest TLE epoch)");
    app.add_option("--window-days", f.window_days, "simulation window length");
    app.add_option("--step", f.step_s, "coarse sampling step, seconds");
    app.add_option("--mask", f.mask_deg, "elevation mask, degrees");
    app.add_option("--trials", f.trials, "Monte Carlo trials");
    app.add_option("--subset-fraction", f.subset_fraction, "fraction of stations per trial");
    app.add_option("--track-seed", f.track_seed, "Monte Carlo seed");
    app.add_option("--threads", f.threads, "worker threads (0 = hardware concurrency)");
    app.add_option("--out", f.out, "output directory");
    app.add_option("--ledger", f.ledger, "ledger file (default <out>/ledger.ldit)");
    app.add_flag("--offline", f.offline, "never touch the network; fail on cache misses");
}

ldit::RunConfig make_config(const Flags& f) {
    ldit::RunConfig c;
    if (!f.config.empty()) {
        const std::filesystem::path path(f.config);
        if (!std::filesystem::exists(path)) {
            throw ldit::Error(ldit::ErrorKind::InputMissing, "config file not found: " + f.config);
        }
        c.apply(ldit::KeyValueConfig::load(path), path.parent_path());
    }
    if (!f.tle.empty()) c.tle_path = f.tle;
    if (!f.rcs.empty()) c.rcs_path = f.rcs;
    if (!f.metadata.empty()) c.metadata_path = f.metadata;
    if (!f.magnitudes.empty()) c.magnitudes_path = f.magnitudes;
    if (!f.stations.empty()) c.stations_path = f.stations;
    if (!f.tle_url.empty()) c.tle_url = f.tle_url;
    if (!f.rcs_url.empty()) c.rcs_url = f.rcs_url;
    if (!f.cache_dir.empty()) c.cache_dir = f.cache_dir;
    if (f.k) c.k = *f.k;
    if (f.cluster_seed) c.cluster_seed = *f.cluster_seed;
    if (!f.window_start.empty()) c.trackability.window_start = ldit::UtcTime::parse_iso8601(f.window_start);
    if (f.window_days) c.trackability.window_days = *f.window_days;
    if (f.step_s) c.trackability.step_s = *f.step_s;
    if (f.mask_deg) c.trackability.mask_deg = *f.mask_deg;
    if (f.trials) c.trackability.trials = *f.trials;
    if (f.subset_fraction) c.trackability.subset_fraction = *f.subset_fraction;
    if (f.track_seed) c.trackability.seed = *f.track_seed;
    if (f.threads) c.trackability.threads = *f.threads;
    if (!f.out.empty()) c.out_dir = f.out;
    if (!f.ledger.empty()) c.ledger_path = f.ledger;
    if (f.offline) c.offline = true;
    c.validate();
    return c;
}

int report_error(ldit::ErrorKind kind, const std::string& message) {
    const int code = ldit::exit_code_for(kind);
    nlohmann::json j{{"error", std::string(ldit::to_string(kind))}, {"message", message}, {"exit_code", code}};
    std::cerr << j.dump() << '\n';
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ldit: detectability, identifiability and trackability scoring for catalogued space objects"};
    app.require_subcommand(1);

    Flags flags;

    auto* ingest = app.add_subcommand("ingest", "parse and merge inputs into <out>/catalog.json");
    add_run_flags(*ingest, flags);

    auto* score = app.add_subcommand("score", "score <out>/catalog.json and append a ledger block");
    add_run_flags(*score, flags);

    auto* run = app.add_subcommand("run", "ingest followed by score");
    add_run_flags(*run, flags);

    std::string rank_key;
    std::size_t top_n = 10;
    bool ascending = false;
    std::string role;
    auto* rank = app.add_subcommand("rank", "print a ranking table and write it as CSV");
    rank->add_option("key", rank_key, "s_d, s_i, s_t or s_dit")->required();
    rank->add_option("--top", top_n, "rows to print");
    rank->add_flag("--ascending", ascending, "lowest first");
    rank->add_option("--role", role, "rank entities instead: owner, operator or manufacturer");
    add_run_flags(*rank, flags);

    std::string verify_path;
    auto* verify = app.add_subcommand("verify-ledger", "check every block of a ledger file");
    verify->add_option("path", verify_path, "ledger file")->required();

    std::string history_path;
    int history_id = 0;
    auto* history = app.add_subcommand("history", "print the recorded scores of one object");
    history->add_option("path", history_path, "ledger file")->required();
    history->add_option("norad_id", history_id, "catalog number")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ldit::kExitOk : ldit::kExitInputError;
    }

    try {
        if (*verify) {
            if (!std::filesystem::exists(verify_path)) {
                return report_error(ldit::ErrorKind::InputMissing, "ledger not found: " + verify_path);
            }
            const auto report = ldit::verify_ledger_file(verify_path);
            nlohmann::json j{{"valid", report.valid}, {"blocks", report.block_count}, {"message", report.message}};
            if (report.first_invalid_index) j["first_invalid_index"] = *report.first_invalid_index;
            std::cout << j.dump() << '\n';
            if (report.valid && report.block_count == 0) std::cout << "empty ledger\n";
            return report.valid ? ldit::kExitOk : ldit::kExitVerifyFailed;
        }
        if (*history) {
            const auto ledger = ldit::Ledger::load(history_path);
            for (const auto& [when, card] : ldit::read_history(ledger, history_id)) {
                auto j = ldit::scorecard_to_json(card);
                j["timestamp"] = when.to_iso8601();
                std::cout << j.dump() << '\n';
            }
            return ldit::kExitOk;
        }

        const auto config = make_config(flags);
        std::filesystem::create_directories(config.out_dir);
        ldit::OutputLock lock(config.out_dir);

        if (*ingest || *run) {
            const auto summary = ldit::cmd_ingest(config);
            std::cout << nlohmann::json{{"command", "ingest"},
                                        {"tle_records", summary.tle_records},
                                        {"tle_rejected_groups", summary.tle_rejected_groups},
                                        {"catalog_size", summary.catalog_size},
                                        {"snapshot_id", summary.snapshot_id}}
                             .dump()
                      << '\n';
        }
        if (*score || *run) {
            const auto summary = ldit::cmd_score(config);
            std::cout << nlohmann::json{{"command", "score"},
                                        {"cards", summary.cards},
                                        {"scored", summary.scored},
                                        {"block_index", summary.block_index},
                                        {"snapshot_id", summary.snapshot_id},
                                        {"fingerprint", config.fingerprint()}}
                             .dump()
                      << '\n';
        }
        if (*rank) {
            const auto table = ldit::cmd_rank(config, rank_key, top_n, !ascending,
                                              role.empty() ? std::nullopt : std::optional<std::string>(role));
            std::cout << table.to_text();
        }
        return ldit::kExitOk;
    } catch (const ldit::Error& e) {
        return report_error(e.kind(), e.what());
    } catch (const std::exception& e) {
        return report_error(ldit::ErrorKind::InvalidInput, e.what());
    }
}
