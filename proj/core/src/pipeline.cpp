#include <ldit/pipeline.hpp>

#include <ldit/csv.hpp>
#include <ldit/detectability.hpp>
#include <ldit/fetch.hpp>
#include <ldit/identifiability.hpp>
#include <ldit/orbit.hpp>
#include <ldit/rcs_magnitude.hpp>
#include <ldit/stations.hpp>
#include <ldit/tle.hpp>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace ldit {

namespace {

constexpr int kHistogramBins = 20;

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << text;
        if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    write_text(path, j.dump(2) + "\n");
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
    const std::filesystem::path p(value);
    return p.is_absolute() || base.empty() ? p : base / p;
}

std::string require_input(const std::filesystem::path& path, const char* what) {
    if (path.empty()) throw Error(ErrorKind::InputMissing, std::string("no ") + what + " path configured");
    if (!std::filesystem::is_regular_file(path)) {
        throw Error(ErrorKind::InputMissing, std::string(what) + " not found: " + path.string());
    }
    return csv::read_file(path);
}

nlohmann::json diagnostic_json(const TleDiagnostic& d) {
    return {{"kind", std::string(to_string(d.kind))}, {"line", d.line_no}, {"lines", d.line_count},
            {"field", d.field}, {"message", d.message}};
}

} // namespace

int exit_code_for(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::CorruptChain:
        return kExitVerifyFailed;
    case ErrorKind::OfflineCacheMiss:
    case ErrorKind::Network:
        return kExitOfflineConflict;
    case ErrorKind::DegenerateRange:
    case ErrorKind::DegenerateVariance:
    case ErrorKind::TooFewPoints:
    case ErrorKind::InsufficientOverlap:
        return kExitDegenerate;
    default:
        return kExitInputError;
    }
}

void RunConfig::apply(const KeyValueConfig& c, const std::filesystem::path& base) {
    if (auto v = c.get_string("inputs.tle")) tle_path = resolve(base, *v);
    if (auto v = c.get_string("inputs.rcs")) rcs_path = resolve(base, *v);
    if (auto v = c.get_string("inputs.metadata")) metadata_path = resolve(base, *v);
    if (auto v = c.get_string("inputs.magnitudes")) magnitudes_path = resolve(base, *v);
    if (auto v = c.get_string("inputs.stations")) stations_path = resolve(base, *v);
    if (auto v = c.get_string("sources.tle_url")) tle_url = *v;
    if (auto v = c.get_string("sources.rcs_url")) rcs_url = *v;
    if (auto v = c.get_string("sources.cache_dir")) cache_dir = resolve(base, *v);
    if (auto v = c.get_int("clustering.k")) k = static_cast<int>(*v);
    if (auto v = c.get_int("clustering.seed")) cluster_seed = static_cast<std::uint64_t>(*v);
    if (auto v = c.get_string("trackability.window_start")) trackability.window_start = UtcTime::parse_iso8601(*v);
    if (auto v = c.get_double("trackability.window_days")) trackability.window_days = *v;
    if (auto v = c.get_double("trackability.step_s")) trackability.step_s = *v;
    if (auto v = c.get_double("trackability.mask_deg")) trackability.mask_deg = *v;
    if (auto v = c.get_int("trackability.trials")) trackability.trials = static_cast<int>(*v);
    if (auto v = c.get_double("trackability.subset_fraction")) trackability.subset_fraction = *v;
    if (auto v = c.get_int("trackability.seed")) trackability.seed = static_cast<std::uint64_t>(*v);
    if (auto v = c.get_int("trackability.threads")) trackability.threads = static_cast<unsigned>(*v);
    if (auto v = c.get_string("output.dir")) out_dir = resolve(base, *v);
    if (auto v = c.get_string("output.ledger")) ledger_path = resolve(base, *v);
    if (auto v = c.get_bool("offline")) offline = *v;
}

void RunConfig::validate() const {
    if (k < 1) throw Error(ErrorKind::InvalidInput, "clustering.k must be at least 1");
    trackability.validate();
    if (out_dir.empty()) throw Error(ErrorKind::InvalidInput, "output directory is empty");
}

nlohmann::json RunConfig::fingerprint() const {
    nlohmann::json track{{"trials", trackability.trials},
                         {"subset_fraction", trackability.subset_fraction},
                         {"window_days", trackability.window_days},
                         {"step_s", trackability.step_s},
                         {"mask_deg", trackability.mask_deg},
                         {"seed", trackability.seed}};
    track["window_start"] = trackability.window_start ? nlohmann::json(trackability.window_start->to_iso8601())
                                                      : nlohmann::json("latest-epoch");
    return {{"clustering", {{"k", k}, {"seed", cluster_seed}}}, {"trackability", track}, {"ldit_version", "0.1.0"}};
}

IngestSummary cmd_ingest(const RunConfig& config) {
    config.validate();
    std::optional<CachedFetcher> fetcher;
    if (config.tle_url || config.rcs_url) fetcher.emplace(config.effective_cache_dir(), config.offline);

    const std::string tle_text = config.tle_url ? fetcher->fetch(*config.tle_url) : require_input(config.tle_path, "TLE file");
    const auto parsed = parse_tle(tle_text);
    if (parsed.records.empty()) {
        throw Error(ErrorKind::InvalidInput, "no valid element sets in the TLE input (" +
                                                 std::to_string(parsed.diagnostics.size()) + " rejected)");
    }

    std::vector<RcsRow> rcs;
    if (config.rcs_url) {
        rcs = parse_rcs_csv(fetcher->fetch(*config.rcs_url), *config.rcs_url);
    } else if (!config.rcs_path.empty()) {
        rcs = parse_rcs_csv(require_input(config.rcs_path, "RCS catalog"), config.rcs_path.string());
    }
    std::vector<MetadataRow> metadata;
    if (config.metadata_path) {
        metadata = parse_metadata_csv(require_input(*config.metadata_path, "metadata file"), config.metadata_path->string());
    }

    const auto catalog = build_catalog(parsed.records, rcs, metadata);
    IngestSummary s;
    s.tle_records = parsed.records.size();
    s.tle_rejected_groups = parsed.diagnostics.size();
    s.catalog_size = catalog.size();
    s.snapshot_id = snapshot_id(catalog);

    std::map<std::string, std::size_t> classes;
    std::size_t rcs_missing = 0;
    for (const auto& e : catalog.entries) {
        ++classes[std::string(to_string(e.orbit_class))];
        if (e.rcs_missing) ++rcs_missing;
    }
    nlohmann::json tle_diags = nlohmann::json::array();
    for (const auto& d : parsed.diagnostics) tle_diags.push_back(diagnostic_json(d));
    nlohmann::json catalog_diags = nlohmann::json::array();
    for (const auto& d : catalog.diagnostics) catalog_diags.push_back({{"kind", d.kind}, {"message", d.message}});
    s.report = {{"snapshot_id", s.snapshot_id},
                {"tle", {{"lines", parsed.total_lines},
                         {"records", parsed.records.size()},
                         {"rejected_groups", parsed.diagnostics.size()},
                         {"diagnostics", tle_diags}}},
                {"rcs_rows", rcs.size()},
                {"metadata_rows", metadata.size()},
                {"catalog", {{"objects", catalog.size()}, {"rcs_missing", rcs_missing}, {"orbit_classes", classes}}},
                {"diagnostics", catalog_diags}};

    write_text(config.catalog_path(), catalog_to_json(catalog).dump(2) + "\n");
    write_json(config.out_dir / "ingest_report.json", s.report);
    return s;
}

ScoreSummary cmd_score(const RunConfig& config, const Clock& clock) {
    config.validate();
    const auto catalog_text = require_input(config.catalog_path(), "catalog (run ingest first)");
    Catalog catalog;
    try {
        catalog = catalog_from_json(nlohmann::json::parse(catalog_text));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidInput, std::string("catalog.json: ") + e.what());
    }
    const auto stations = parse_ground_stations(require_input(config.stations_path, "station file"),
                                                config.stations_path.string());
    const auto snapshot = snapshot_id(catalog);
    const auto& out = config.out_dir;
    std::map<int, const CatalogEntry*> by_id;
    for (const auto& e : catalog.entries) by_id[e.norad_id] = &e;
    auto name_of = [&](int id) { return by_id.at(id)->name; };
    nlohmann::json diagnostics = nlohmann::json::array();

    // Detectability
    const auto det = score_detectability(catalog.entries);
    {
        std::string text = "norad_id,name,s_d\n";
        std::vector<double> values;
        for (const auto& d : det) {
            text += csv::join({std::to_string(d.norad_id), name_of(d.norad_id), csv::fixed6(d.s_d)}) + "\n";
            values.push_back(d.s_d);
        }
        write_text(out / "detectability.csv", text);
        write_json(out / "detectability_hist.json", score_histogram_json(values, kHistogramBins, "S_D"));
        for (const auto& e : catalog.entries) {
            if (e.rcs_missing) {
                diagnostics.push_back({{"norad_id", e.norad_id}, {"kind", "rcs-missing"},
                                       {"message", "no RCS in any source; S_D absent"}});
            }
        }
    }

    // Identifiability
    std::vector<int> ids;
    std::vector<Vec3> momenta;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        ids.push_back(catalog.entries[i].norad_id);
        momenta.push_back(momentum_from_elements(catalog.tles[i]).l);
    }
    const auto model = train_cluster_model(ids, momenta, config.k, config.cluster_seed);
    const auto ident = score_identifiability(model);
    {
        std::string text = "norad_id,name,cluster,c_i,s_i\n";
        for (const auto& s : ident) {
            text += csv::join({std::to_string(s.norad_id), name_of(s.norad_id), std::to_string(s.cluster),
                               csv::fixed6(s.c_i), csv::fixed6(s.s_i)}) +
                    "\n";
        }
        write_text(out / "identifiability.csv", text);
        write_json(out / "clusters.json", cluster_plot_json(model));
    }

    // Trackability
    auto mc = monte_carlo_trackability(catalog.tles, stations, config.trackability);
    std::vector<TrackabilityDiagnostic> track_diags = mc.diagnostics;
    const auto track = combine_trackability(mc.metrics, &track_diags);
    {
        std::string text = "norad_id,name,avg_pass_s,avg_interval_s,coverage,s_t\n";
        std::vector<double> values;
        for (std::size_t i = 0; i < track.size(); ++i) {
            const auto& m = mc.metrics[i];
            text += csv::join({std::to_string(m.norad_id), name_of(m.norad_id), csv::fixed6(m.avg_pass_duration_s),
                               csv::fixed6(m.avg_interval_s), csv::fixed6(m.coverage), csv::fixed6(track[i].d_t)}) +
                    "\n";
            values.push_back(track[i].d_t);
        }
        write_text(out / "trackability.csv", text);
        write_json(out / "trackability_hist.json", score_histogram_json(values, kHistogramBins, "S_T"));
        for (const auto& d : track_diags) {
            diagnostics.push_back({{"norad_id", d.norad_id}, {"kind", d.kind}, {"message", d.message}});
        }
    }

    // Optional RCS/magnitude check
    if (config.magnitudes_path) {
        const auto mags = parse_magnitude_csv(require_input(*config.magnitudes_path, "magnitude file"),
                                              config.magnitudes_path->string());
        try {
            write_json(out / "rcs_magnitude.json", correlation_plot_json(correlate_rcs_magnitude(catalog.entries, mags)));
        } catch (const Error& e) {
            diagnostics.push_back({{"norad_id", 0}, {"kind", std::string(to_string(e.kind()))}, {"message", e.what()}});
        }
    }

    // Fusion and entities
    const auto cards = build_scorecards(catalog, det, ident, track, snapshot);
    write_text(out / "scores.csv", scores_csv(cards));
    for (auto role : {EntityRole::Owner, EntityRole::Operator, EntityRole::Manufacturer}) {
        write_text(out / ("entities_" + std::string(to_string(role)) + ".csv"),
                   entities_csv(entity_scores(cards, catalog.entries, role)));
    }
    const auto spider_dir = out / "spider";
    std::filesystem::remove_all(spider_dir);
    ScoreSummary summary;
    summary.cards = cards.size();
    for (const auto& c : cards) {
        if (c.s_dit) {
            ++summary.scored;
            write_json(spider_dir / ("spider_" + std::to_string(c.norad_id) + ".json"), spider_data(c));
        } else {
            std::string missing;
            if (!c.s_d) missing += " s_d";
            if (!c.s_i) missing += " s_i";
            if (!c.s_t) missing += " s_t";
            diagnostics.push_back({{"norad_id", c.norad_id}, {"kind", "missing-component"},
                                   {"message", "excluded from S_DIT; missing" + missing}});
        }
    }

    auto fingerprint = config.fingerprint();
    fingerprint["snapshot_id"] = snapshot;
    fingerprint["trackability"]["window_start"] = mc.window.start.to_iso8601();
    fingerprint["stations"] = stations.size();
    write_json(out / "diagnostics.json", diagnostics);
    write_json(out / "run.json", {{"fingerprint", fingerprint},
                                  {"objects", cards.size()},
                                  {"scored", summary.scored},
                                  {"window", trackability_config_json(config.trackability, mc.window)}});

    auto ledger = Ledger::load(config.effective_ledger_path());
    const auto block = append_block(ledger, cards, fingerprint, clock);
    ledger.save(config.effective_ledger_path());
    write_json(out / "ledger_receipt.json", {{"ledger", config.effective_ledger_path().string()},
                                             {"index", block.index},
                                             {"timestamp", block.timestamp},
                                             {"block_hash", to_hex(block.block_hash())},
                                             {"payload_hash", to_hex(block.payload_hash)}});
    summary.block_index = block.index;
    summary.snapshot_id = snapshot;
    return summary;
}

std::string RankTable::to_csv() const {
    std::string s = csv::join(header) + "\n";
    for (const auto& r : rows) s += csv::join(r) + "\n";
    return s;
}

std::string RankTable::to_text() const {
    std::vector<std::size_t> width(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            os << (i ? "  " : "") << cells[i] << std::string(width[i] - cells[i].size(), ' ');
        }
        os << "\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
    return os.str();
}

RankTable cmd_rank(const RunConfig& config, const std::string& key, std::size_t top_n, bool descending,
                   const std::optional<std::string>& role) {
    RankTable table;
    if (role) {
        const auto r = entity_role_from_string(*role);
        const auto path = config.out_dir / ("entities_" + std::string(to_string(r)) + ".csv");
        const auto t = csv::parse_with_header(require_input(path, "entity scores (run score first)"),
                                              "entity,role,mean_s_dit,asset_count", path.string());
        struct Row {
            std::vector<std::string> fields;
            double mean;
        };
        std::vector<Row> rows;
        for (const auto& row : t.rows) rows.push_back({row.fields, csv::parse_double(row.fields[2])});
        std::stable_sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) {
            if (a.mean != b.mean) return descending ? a.mean > b.mean : a.mean < b.mean;
            return a.fields[0] < b.fields[0];
        });
        table.header = {"rank", "entity", "role", "mean_s_dit", "asset_count"};
        for (std::size_t i = 0; i < rows.size() && i < top_n; ++i) {
            table.rows.push_back({std::to_string(i + 1), rows[i].fields[0], rows[i].fields[1], rows[i].fields[2],
                                  rows[i].fields[3]});
        }
        write_text(config.out_dir / ("rank_entities_" + std::string(to_string(r)) + ".csv"), table.to_csv());
        return table;
    }

    const auto k = rank_key_from_string(key);
    const auto path = config.out_dir / "scores.csv";
    const auto cards = parse_scores_csv(require_input(path, "scores (run score first)"), path.string());
    const auto ranked = rank(cards, k, descending, top_n);
    table.header = {"rank", "norad_id", "name", "s_d", "s_i", "s_t", "s_dit"};
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        const auto& c = ranked[i];
        table.rows.push_back({std::to_string(i + 1), std::to_string(c.norad_id), c.name, csv::fixed6(c.s_d),
                              csv::fixed6(c.s_i), csv::fixed6(c.s_t), csv::fixed6(c.s_dit)});
    }
    write_text(config.out_dir / ("rank_" + std::string(to_string(k)) + ".csv"), table.to_csv());
    return table;
}

OutputLock::OutputLock(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto path = dir / ".ldit.lock";
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) throw Error(ErrorKind::InvalidInput, "cannot open lock file " + path.string());
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
        ::close(fd_);
        fd_ = -1;
        throw Error(ErrorKind::InvalidInput, "another ldit process holds " + path.string());
    }
}

OutputLock::~OutputLock() {
    if (fd_ >= 0) {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
}

} // namespace ldit
