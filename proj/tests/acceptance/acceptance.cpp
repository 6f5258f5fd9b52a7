// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "../support/oracles.hpp"

#include <ldit/catalog.hpp>
#include <ldit/csv.hpp>
#include <ldit/detectability.hpp>
#include <ldit/identifiability.hpp>
#include <ldit/kmeans.hpp>
#include <ldit/ledger.hpp>
#include <ldit/orbit.hpp>
#include <ldit/passes.hpp>
#include <ldit/pipeline.hpp>
#include <ldit/scoring.hpp>
#include <ldit/sgp4.hpp>
#include <ldit/stations.hpp>
#include <ldit/tle.hpp>
#include <ldit/trackability.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kFixtures(LDIT_FIXTURE_DIR);

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Records the first failed check; later checks only add detail.
class Check {
public:
    void require(bool ok, const std::string& what) {
        if (!ok && out_.pass) {
            out_.pass = false;
            out_.detail = what;
        }
    }
    void note(const std::string& s) {
        if (out_.pass) out_.detail += (out_.detail.empty() ? "" : "; ") + s;
    }
    Outcome result() const { return out_; }

private:
    Outcome out_;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<ldit::TleRecord> load_tles(const fs::path& p) {
    return ldit::parse_tle(ldit::csv::read_file(p)).records;
}

ldit::RunConfig fixture_config(const fs::path& out) {
    ldit::RunConfig c;
    c.apply(ldit::KeyValueConfig::load(kFixtures / "ldit.conf"), kFixtures);
    c.out_dir = out;
    c.ledger_path.reset();
    return c;
}

// 1
Outcome detectability_oracle() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    oracle::Gen g(1001);
    std::vector<ldit::CatalogEntry> entries(1000);
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        entries[i].norad_id = static_cast<int>(i + 1);
        entries[i].rcs_dbsm = g.uniform(-40.0, 30.0);
        entries[i].rcs_missing = false;
        lo = std::min(lo, *entries[i].rcs_dbsm);
        hi = std::max(hi, *entries[i].rcs_dbsm);
    }
    const auto scores = ldit::score_detectability(entries);
    double worst = 0.0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const double v = *entries[i].rcs_dbsm;
        worst = std::max(worst, std::abs(scores[i].s_d - oracle::detectability(v, lo, hi)));
        if (v == lo) c.require(scores[i].s_d == 0.0, "minimum does not map to exactly 0");
        if (v == hi) c.require(scores[i].s_d == 1.0, "maximum does not map to exactly 1");
    }
    const double elapsed = seconds_since(t0);
    c.require(worst <= 1e-12, "max deviation " + fmt("%.3e", worst));
    c.require(elapsed < 1.0, "runtime " + fmt("%.3f s", elapsed));
    c.note("max |dev| " + fmt("%.2e", worst) + ", " + fmt("%.3f s", elapsed));
    return c.result();
}

// 2
Outcome identifiability_formula() {
    Check c;
    c.require(ldit::cluster_identifiability(1) == 0.5, "C_I(1) != 0.5");
    c.require(ldit::cluster_identifiability(4) == 1.0 / 3.0, "C_I(4) != 1/3");
    for (std::size_t n = 2; n <= 10000; ++n) {
        if (!(ldit::cluster_identifiability(n) < ldit::cluster_identifiability(n - 1))) {
            c.require(false, "not strictly decreasing at n=" + std::to_string(n));
            break;
        }
    }
    const auto tles = load_tles(kFixtures / "catalog" / "catalog.tle");
    std::vector<int> ids;
    std::vector<ldit::Vec3> momenta;
    for (const auto& t : tles) {
        ids.push_back(t.norad_id);
        momenta.push_back(ldit::momentum_from_elements(t).l);
    }
    const auto model = ldit::train_cluster_model(ids, momenta, ldit::kDefaultClusterCount, ldit::kDefaultSeed);
    const auto nonempty = std::count_if(model.sizes.begin(), model.sizes.end(), [](auto s) { return s > 0; });
    c.require(tles.size() == 1000, "fixture has " + std::to_string(tles.size()) + " objects");
    c.require(nonempty == 60, std::to_string(nonempty) + " non-empty clusters");
    const auto smallest = *std::min_element(model.sizes.begin(), model.sizes.end());
    const auto smallest_count = std::count(model.sizes.begin(), model.sizes.end(), smallest);
    c.require(smallest_count == 1, "smallest cluster size shared by " + std::to_string(smallest_count) + " clusters");
    const auto scores = ldit::score_identifiability(model);
    std::size_t members = 0;
    for (const auto& s : scores) {
        if (model.sizes[s.cluster] != smallest) continue;
        ++members;
        c.require(s.s_i == 1.0, "smallest-cluster member " + std::to_string(s.norad_id) + " has S_I " + fmt("%.6f", s.s_i));
    }
    c.note("60 clusters, smallest size " + std::to_string(smallest) + " with " + std::to_string(members) +
           " member(s) at S_I=1");
    return c.result();
}

// 3
Outcome clustering_oracle() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    int agreed = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        oracle::Gen g(5000 + seed);
        const double spread = 1.0;
        const std::vector<ldit::Vec3> centers{{0, 0, 0}, {200, 0, 0}, {0, 0, 300}};
        std::vector<ldit::Vec3> pts;
        std::vector<int> labels;
        for (int b = 0; b < 3; ++b) {
            const auto n = g.integer(20, 80);
            for (long long i = 0; i < n; ++i) {
                pts.push_back(centers[b] + ldit::Vec3{g.uniform(-spread, spread), g.uniform(-spread, spread),
                                                      g.uniform(-spread, spread)});
                labels.push_back(b);
            }
        }
        const auto r = ldit::bisecting_kmeans(pts, 3, seed);
        std::map<int, int> map;
        bool ok = true;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            auto [it, inserted] = map.emplace(labels[i], r.assignments[i]);
            ok &= it->second == r.assignments[i];
        }
        std::set<int> image;
        for (const auto& [_, v] : map) image.insert(v);
        ok &= image.size() == 3;
        agreed += ok;
    }
    const double elapsed = seconds_since(t0);
    c.require(agreed == 10, std::to_string(agreed) + "/10 seeds recovered the partition");
    c.require(elapsed < 5.0, "runtime " + fmt("%.3f s", elapsed));
    c.note("10/10 seeds at 100% agreement, " + fmt("%.3f s", elapsed));
    return c.result();
}

// 4
Outcome momentum_conservation() {
    Check c;
    const oracle::KeplerElements base{15000.0, 0.3, 63.4 * std::numbers::pi / 180, 0.7, 4.7, 0.0};
    double lo = 1e300, hi = 0.0;
    for (int k = 0; k < 100; ++k) {
        auto el = base;
        el.mean_anomaly = 2.0 * std::numbers::pi * k / 100.0;
        const auto s = oracle::kepler_state(el, ldit::kMuEarth);
        const double l = ldit::norm(ldit::angular_momentum({{}, s.r, s.v}).l);
        lo = std::min(lo, l);
        hi = std::max(hi, l);
    }
    const double spread = (hi - lo) / lo;
    c.require(spread < 1e-9, "two-body |l| spread " + fmt("%.3e", spread));

    double worst = 0.0;
    int worst_id = 0;
    for (const auto& t : load_tles(kFixtures / "catalog" / "catalog.tle")) {
        const auto s = ldit::propagate(t, t.epoch);
        const double a = ldit::semi_major_axis_km(t.mean_motion);
        const double expected = std::sqrt(ldit::kMuEarth * a * (1.0 - t.eccentricity * t.eccentricity));
        const double rel = std::abs(ldit::norm(ldit::angular_momentum(s).l) / expected - 1.0);
        if (rel > worst) {
            worst = rel;
            worst_id = t.norad_id;
        }
    }
    c.require(worst < 0.01, "SGP4 |l| off by " + fmt("%.4f", worst) + " for " + std::to_string(worst_id));
    c.note("two-body spread " + fmt("%.1e", spread) + ", SGP4 vs elements worst " + fmt("%.2e", worst) +
           " over 1000 objects");
    return c.result();
}

// 5
Outcome propagator_verification() {
    Check c;
    std::map<int, ldit::Sgp4> models;
    for (const auto& t : load_tles(kFixtures / "sgp4" / "verification.tle")) models.emplace(t.norad_id, ldit::Sgp4(t));
    std::istringstream in(ldit::csv::read_file(kFixtures / "sgp4" / "verification.csv"));
    std::string line;
    std::getline(in, line);
    double dr = 0, dv = 0;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        std::vector<double> v;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) v.push_back(std::stod(cell));
        const auto it = models.find(static_cast<int>(v[0]));
        if (it == models.end()) {
            c.require(false, "vector for unknown object " + cell);
            continue;
        }
        const auto r = it->second.propagate(v[1]);
        c.require(r.error == 0, "propagation error " + std::to_string(r.error));
        dr = std::max(dr, ldit::norm(r.position - ldit::Vec3{v[2], v[3], v[4]}));
        dv = std::max(dv, ldit::norm(r.velocity - ldit::Vec3{v[5], v[6], v[7]}));
        ++rows;
    }
    c.require(rows > 0, "no vectors");
    c.require(dr <= 1e-3, "position error " + fmt("%.3e km", dr));
    c.require(dv <= 1e-6, "velocity error " + fmt("%.3e km/s", dv));
    c.note(std::to_string(rows) + " vectors, max |dr| " + fmt("%.2e km", dr) + ", max |dv| " + fmt("%.2e km/s", dv));
    return c.result();
}

// 6
Outcome geo_floor() {
    Check c;
    const auto geo = load_tles(kFixtures / "geo5" / "geo.tle");
    const auto stations = ldit::load_ground_stations(kFixtures / "stations.csv");
    c.require(geo.size() == 5, "fixture has " + std::to_string(geo.size()) + " objects");
    const auto mc = ldit::monte_carlo_trackability(geo, stations, {});
    const auto scores = ldit::combine_trackability(mc.metrics);
    c.require(scores.size() == geo.size(), "only " + std::to_string(scores.size()) + " objects scored");
    std::string values;
    for (const auto& s : scores) {
        c.require(std::abs(s.d_t - 1.0 / 3.0) <= 1e-6, std::to_string(s.norad_id) + " D_T " + fmt("%.6f", s.d_t));
        values += (values.empty() ? "" : " ") + fmt("%.6f", s.d_t);
    }
    c.note("D_T " + values);
    return c.result();
}

// 7
Outcome trackability_oracle() {
    Check c;
    const auto leo = load_tles(kFixtures / "leo10" / "leo.tle");
    const auto stations = ldit::load_ground_stations(kFixtures / "leo10" / "stations.csv");
    c.require(leo.size() == 10 && stations.size() == 5, "fixture shape");
    ldit::UtcTime start = leo.front().epoch;
    for (const auto& t : leo) start = std::max(start, t.epoch);
    const ldit::PassWindow window{start, start.plus_seconds(86400.0), 30.0};
    const double mask = 10.0;
    std::size_t total = 0;
    double worst = 0.0;
    for (const auto& t : leo) {
        for (const auto& st : stations) {
            const auto mine = ldit::predict_passes(t, st, window, mask);
            const auto ref = oracle::dense_passes(t, st, window.start.unix_seconds(), window.end.unix_seconds(),
                                                  std::max(mask, st.min_elevation_deg));
            if (mine.size() != ref.size()) {
                c.require(false, std::to_string(t.norad_id) + "@" + st.station_id + ": " +
                                     std::to_string(mine.size()) + " passes vs oracle " + std::to_string(ref.size()));
                continue;
            }
            for (std::size_t i = 0; i < ref.size(); ++i) {
                worst = std::max(worst, std::abs(mine[i].rise.unix_seconds() - ref[i].rise_unix));
                worst = std::max(worst, std::abs(mine[i].set.unix_seconds() - ref[i].set_unix));
            }
            total += ref.size();
        }
    }
    c.require(worst <= 10.0, "endpoint disagreement " + fmt("%.1f s", worst));

    ldit::TrackabilityConfig cfg;
    cfg.window_start = start;
    cfg.window_days = 1.0;
    const auto a = ldit::monte_carlo_trackability(leo, stations, cfg);
    const auto b = ldit::monte_carlo_trackability(leo, stations, cfg);
    bool identical = a.metrics.size() == b.metrics.size();
    for (std::size_t i = 0; identical && i < a.metrics.size(); ++i) {
        identical = a.metrics[i].avg_pass_duration_s == b.metrics[i].avg_pass_duration_s &&
                    a.metrics[i].avg_interval_s == b.metrics[i].avg_interval_s &&
                    a.metrics[i].coverage == b.metrics[i].coverage;
    }
    c.require(identical, "same seed produced different metrics");
    c.note(std::to_string(total) + " passes match the 10 s oracle, max endpoint gap " + fmt("%.1f s", worst) +
           ", seeded metrics bit-identical");
    return c.result();
}

// 8
Outcome fusion(const fs::path& scored_out) {
    Check c;
    oracle::Gen g(8008);
    double worst = 0.0;
    for (int n = 0; n < 100000; ++n) {
        const double d = g.uniform(0, 1), i = g.uniform(0, 1), t = g.uniform(0, 1);
        worst = std::max(worst, std::abs(ldit::combine_dit(d, i, t) - (d + i + t) / 3.0));
    }
    c.require(worst <= 1e-12, "fusion deviation " + fmt("%.3e", worst));

    const auto ledger = ldit::Ledger::load(scored_out / "ledger.ldit");
    if (ledger.empty()) {
        c.require(false, "no scored run available");
        return c.result();
    }
    const auto payload = nlohmann::json::parse(ledger.blocks().back().payload);
    std::vector<ldit::ScoreCard> cards;
    for (const auto& j : payload["scorecards"]) cards.push_back(ldit::scorecard_from_json(j));
    const auto catalog = ldit::catalog_from_json(nlohmann::json::parse(ldit::csv::read_file(scored_out / "catalog.json")));
    double worst_balance = 0.0;
    for (auto role : {ldit::EntityRole::Owner, ldit::EntityRole::Operator, ldit::EntityRole::Manufacturer}) {
        std::map<int, const ldit::CatalogEntry*> by_id;
        for (const auto& e : catalog.entries) by_id[e.norad_id] = &e;
        double direct = 0.0;
        for (const auto& card : cards) {
            if (!card.s_dit) continue;
            const auto* e = by_id.at(card.norad_id);
            const auto& field = role == ldit::EntityRole::Owner      ? e->owner
                                : role == ldit::EntityRole::Operator ? e->operator_name
                                                                     : e->manufacturer;
            if (field) direct += *card.s_dit;
        }
        double balance = 0.0;
        for (const auto& es : ldit::entity_scores(cards, catalog.entries, role)) {
            if (!es.unknown) balance += es.mean_s_dit * static_cast<double>(es.asset_count);
        }
        worst_balance = std::max(worst_balance, std::abs(balance - direct));
    }
    c.require(worst_balance <= 1e-9, "mass balance off by " + fmt("%.3e", worst_balance));
    c.note("1e5 triples max |dev| " + fmt("%.1e", worst) + ", entity mass balance residual " +
           fmt("%.1e", worst_balance) + " over " + std::to_string(cards.size()) + " cards");
    return c.result();
}

// 9
Outcome ledger_tamper() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    oracle::Gen g(9009);
    ldit::Ledger ledger;
    std::int64_t now = 1'709'251'200;
    for (int b = 0; b < 100; ++b) {
        std::vector<ldit::ScoreCard> cards(5);
        for (auto& card : cards) {
            card.norad_id = static_cast<int>(g.integer(1, 99999));
            card.s_d = g.uniform(0, 1);
            card.s_i = g.uniform(0, 1);
            card.s_t = g.uniform(0, 1);
            card.s_dit = ldit::combine_dit(*card.s_d, *card.s_i, *card.s_t);
        }
        ldit::append_block(ledger, cards, {{"block", b}}, [&] { return now += 3600; });
    }
    const auto bytes = ledger.to_bytes();
    c.require(ldit::verify_chain(bytes).valid, "unmutated ledger does not verify");

    // Byte offset where each block starts, to name the block a mutation lands in.
    std::vector<std::size_t> starts;
    std::size_t off = 6;
    while (off < bytes.size()) {
        starts.push_back(off);
        const std::uint32_t len = bytes[off] | bytes[off + 1] << 8 | bytes[off + 2] << 16 |
                                  static_cast<std::uint32_t>(bytes[off + 3]) << 24;
        off += 4 + len;
    }
    int detected = 0, exact = 0;
    for (int m = 0; m < 200; ++m) {
        auto mutated = bytes;
        const auto pos = static_cast<std::size_t>(g.integer(0, static_cast<long long>(bytes.size()) - 1));
        mutated[pos] ^= static_cast<std::uint8_t>(g.integer(1, 255));
        const std::size_t block =
            pos < 6 ? 0 : static_cast<std::size_t>(std::upper_bound(starts.begin(), starts.end(), pos) - starts.begin() - 1);
        const auto report = ldit::verify_chain(mutated);
        if (!report.valid && report.first_invalid_index && *report.first_invalid_index <= block) {
            ++detected;
            exact += *report.first_invalid_index == block;
        } else {
            c.require(false, "mutation at byte " + std::to_string(pos) + " (block " + std::to_string(block) + ") " +
                                 (report.valid ? "not detected" : "reported at a later index"));
        }
    }
    const double elapsed = seconds_since(t0);
    c.require(elapsed < 5.0, "runtime " + fmt("%.3f s", elapsed));
    c.note(std::to_string(detected) + "/200 mutations detected (" + std::to_string(exact) +
           " at the mutated block), " + fmt("%.3f s", elapsed));
    return c.result();
}

// 10
Outcome end_to_end(const fs::path& root) {
    Check c;
    const std::vector<std::string> artifacts{
        "scores.csv",         "detectability.csv",       "identifiability.csv",       "trackability.csv",
        "entities_owner.csv", "entities_operator.csv",   "entities_manufacturer.csv", "clusters.json",
        "rcs_magnitude.json", "detectability_hist.json", "trackability_hist.json",    "diagnostics.json",
        "catalog.json"};
    double slowest = 0.0;
    const auto clock = [] { return std::int64_t{1'709'251'200}; };
    std::size_t blocks_before = 0, blocks_after = 0;
    for (const char* run : {"run_a", "run_b"}) {
        const auto cfg = fixture_config(root / run);
        fs::remove_all(cfg.out_dir);
        ldit::cmd_ingest(cfg);
        blocks_before = ldit::Ledger::load(cfg.effective_ledger_path()).size();
        const auto t0 = std::chrono::steady_clock::now();
        ldit::cmd_score(cfg, clock);
        slowest = std::max(slowest, seconds_since(t0));
        blocks_after = ldit::Ledger::load(cfg.effective_ledger_path()).size();
    }
    c.require(blocks_after == blocks_before + 1, "ledger grew by " + std::to_string(blocks_after - blocks_before));
    c.require(slowest < 300.0, "cmd_score took " + fmt("%.1f s", slowest));
    std::size_t compared = 0;
    for (const auto& name : artifacts) {
        compared += 1;
        c.require(ldit::csv::read_file(root / "run_a" / name) == ldit::csv::read_file(root / "run_b" / name),
                  name + " differs between runs");
    }
    for (const auto& entry : fs::directory_iterator(root / "run_a" / "spider")) {
        ++compared;
        const auto other = root / "run_b" / "spider" / entry.path().filename();
        c.require(fs::exists(other) && ldit::csv::read_file(entry.path()) == ldit::csv::read_file(other),
                  entry.path().filename().string() + " differs between runs");
    }
    c.note(std::to_string(compared) + " artifacts byte-identical, slowest cmd_score " + fmt("%.1f s", slowest));
    return c.result();
}

} // namespace

int main(int argc, char** argv) {
    const fs::path root = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "ldit_acceptance";
    fs::create_directories(root);

    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "detectability oracle equivalence", detectability_oracle},
        {2, "identifiability formula and k=60 fixture clustering", identifiability_formula},
        {3, "bisecting k-means recovers separated blobs", clustering_oracle},
        {4, "angular momentum conservation", momentum_conservation},
        {5, "SGP4 verification vectors", propagator_verification},
        {6, "GEO trackability floor", geo_floor},
        {7, "pass prediction vs dense-sampling oracle", trackability_oracle},
        {10, "end-to-end determinism and scale", [&] { return end_to_end(root); }},
        {8, "fusion and entity mass balance", [&] { return fusion(root / "run_a"); }},
        {9, "ledger tamper detection", ledger_tamper},
    };

    std::map<int, std::pair<std::string, Outcome>> results;
    for (const auto& cr : criteria) {
        Outcome o;
        try {
            o = cr.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        results[cr.id] = {cr.name, o};
    }
    int failed = 0;
    for (const auto& [id, r] : results) {
        std::printf("[%s] %2d %s: %s\n", r.second.pass ? "PASS" : "FAIL", id, r.first.c_str(), r.second.detail.c_str());
        failed += !r.second.pass;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
    return failed == 0 ? 0 : 1;
}
