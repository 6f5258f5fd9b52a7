#include <ldit/catalog.hpp>

#include <ldit/csv.hpp>
#include <ldit/digest.hpp>
#include <ldit/error.hpp>
#include <ldit/orbit.hpp>

#include <algorithm>
#include <cmath>
#include <map>

namespace ldit {

std::string_view to_string(OrbitClass c) noexcept {
    switch (c) {
    case OrbitClass::LEO: return "LEO";
    case OrbitClass::MEO: return "MEO";
    case OrbitClass::GEO: return "GEO";
    case OrbitClass::HEO: return "HEO";
    case OrbitClass::OTHER: return "OTHER";
    }
    return "OTHER";
}

OrbitClass orbit_class_from_string(std::string_view s) {
    for (auto c : {OrbitClass::LEO, OrbitClass::MEO, OrbitClass::GEO, OrbitClass::HEO, OrbitClass::OTHER}) {
        if (to_string(c) == s) return c;
    }
    throw Error(ErrorKind::InvalidInput, "unknown orbit class '" + std::string(s) + "'");
}

OrbitClass classify_orbit(double mean_motion_rev_per_day, double e) noexcept {
    const double p = orbital_period_minutes(mean_motion_rev_per_day);
    if (p < 128.0 && e < 0.25) return OrbitClass::LEO;
    if (e >= 0.25 && p > 128.0) return OrbitClass::HEO;
    if (p >= 128.0 && p < 1300.0) return OrbitClass::MEO;
    if (p >= 1300.0 && p <= 1500.0 && e < 0.05) return OrbitClass::GEO;
    return OrbitClass::OTHER;
}

double m2_to_dbsm(double square_meters) {
    if (!(square_meters > 0.0) || !std::isfinite(square_meters)) {
        throw Error(ErrorKind::FieldOutOfRange, "RCS in m2 must be positive and finite");
    }
    return 10.0 * std::log10(square_meters);
}

namespace {

template <typename T>
void take_first(std::optional<T>& slot, const std::optional<T>& candidate) {
    if (!slot && candidate && !candidate->empty()) slot = candidate;
}

std::optional<std::string> non_empty(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return s;
}

std::string where(std::string_view source, std::size_t line) {
    return std::string(source) + ":" + std::to_string(line);
}

int parse_norad(const std::string& field, std::string_view source, std::size_t line) {
    long long id = 0;
    try {
        id = csv::parse_int(field);
    } catch (const Error&) {
        throw Error(ErrorKind::InvalidInput, where(source, line) + ": bad norad_id '" + field + "'");
    }
    if (id <= 0 || id > 339999) {
        throw Error(ErrorKind::FieldOutOfRange, where(source, line) + ": norad_id out of range");
    }
    return static_cast<int>(id);
}

} // namespace

std::vector<CatalogEntry> merge_rcs(const std::vector<CatalogEntry>& per_source) {
    std::map<int, std::vector<const CatalogEntry*>> groups;
    for (const auto& e : per_source) groups[e.norad_id].push_back(&e);

    auto source_of = [](const CatalogEntry* e) -> std::string {
        return e->rcs_sources.empty() ? std::string() : e->rcs_sources.front().source;
    };

    std::vector<CatalogEntry> out;
    out.reserve(groups.size());
    for (auto& [id, members] : groups) {
        std::stable_sort(members.begin(), members.end(),
                         [&](const CatalogEntry* a, const CatalogEntry* b) { return source_of(a) < source_of(b); });
        CatalogEntry merged;
        merged.norad_id = id;
        merged.orbit_class = members.front()->orbit_class;
        std::optional<std::string> name;
        for (const auto* m : members) {
            for (const auto& s : m->rcs_sources) {
                merged.rcs_sources.push_back(s);
                if (s.dbsm && (!merged.rcs_dbsm || *s.dbsm > *merged.rcs_dbsm)) merged.rcs_dbsm = s.dbsm;
            }
            take_first(name, non_empty(m->name));
            take_first(merged.owner, m->owner);
            take_first(merged.operator_name, m->operator_name);
            take_first(merged.manufacturer, m->manufacturer);
        }
        std::stable_sort(merged.rcs_sources.begin(), merged.rcs_sources.end(),
                         [](const RcsSource& a, const RcsSource& b) { return a.source < b.source; });
        merged.name = name.value_or("");
        merged.rcs_missing = !merged.rcs_dbsm.has_value();
        out.push_back(std::move(merged));
    }
    return out;
}

std::vector<RcsRow> parse_rcs_csv(std::string_view text, std::string_view source_name) {
    const auto table = csv::parse_with_header(text, "norad_id,source,rcs,unit", source_name);
    std::vector<RcsRow> rows;
    for (const auto& r : table.rows) {
        RcsRow row;
        row.norad_id = parse_norad(r.fields[0], source_name, r.line_no);
        row.source = r.fields[1];
        if (row.source.empty()) {
            throw Error(ErrorKind::InvalidInput, where(source_name, r.line_no) + ": empty source");
        }
        std::optional<double> value;
        try {
            value = csv::parse_optional_double(r.fields[2]);
        } catch (const Error&) {
            throw Error(ErrorKind::InvalidInput, where(source_name, r.line_no) + ": bad rcs '" + r.fields[2] + "'");
        }
        const auto& unit = r.fields[3];
        if (unit == "dbsm") {
            if (value && !std::isfinite(*value)) {
                throw Error(ErrorKind::FieldOutOfRange, where(source_name, r.line_no) + ": rcs not finite");
            }
            row.dbsm = value;
        } else if (unit == "m2") {
            if (value) {
                try {
                    row.dbsm = m2_to_dbsm(*value);
                } catch (const Error& e) {
                    throw Error(e.kind(), where(source_name, r.line_no) + ": " + e.what());
                }
            }
        } else {
            throw Error(ErrorKind::InvalidInput, where(source_name, r.line_no) + ": unit must be dbsm or m2");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<RcsRow> load_rcs_csv(const std::filesystem::path& path) {
    return parse_rcs_csv(csv::read_file(path), path.string());
}

std::vector<MetadataRow> parse_metadata_csv(std::string_view text, std::string_view source_name) {
    const auto table =
        csv::parse_with_header(text, "norad_id,source,name,owner,operator,manufacturer", source_name);
    std::vector<MetadataRow> rows;
    for (const auto& r : table.rows) {
        MetadataRow row;
        row.norad_id = parse_norad(r.fields[0], source_name, r.line_no);
        row.source = r.fields[1];
        row.name = non_empty(r.fields[2]);
        row.owner = non_empty(r.fields[3]);
        row.operator_name = non_empty(r.fields[4]);
        row.manufacturer = non_empty(r.fields[5]);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<MetadataRow> load_metadata_csv(const std::filesystem::path& path) {
    return parse_metadata_csv(csv::read_file(path), path.string());
}

std::vector<MagnitudeObservation> parse_magnitude_csv(std::string_view text, std::string_view source_name) {
    const auto table = csv::parse_with_header(text, "norad_id,std_mag", source_name);
    std::vector<MagnitudeObservation> rows;
    for (const auto& r : table.rows) {
        MagnitudeObservation m;
        m.norad_id = parse_norad(r.fields[0], source_name, r.line_no);
        try {
            m.std_magnitude = csv::parse_double(r.fields[1]);
        } catch (const Error&) {
            throw Error(ErrorKind::InvalidInput, where(source_name, r.line_no) + ": bad std_mag");
        }
        if (!std::isfinite(m.std_magnitude)) {
            throw Error(ErrorKind::FieldOutOfRange, where(source_name, r.line_no) + ": std_mag not finite");
        }
        rows.push_back(m);
    }
    return rows;
}

std::vector<MagnitudeObservation> load_magnitude_csv(const std::filesystem::path& path) {
    return parse_magnitude_csv(csv::read_file(path), path.string());
}

Catalog build_catalog(const std::vector<TleRecord>& tles, const std::vector<RcsRow>& rcs,
                      const std::vector<MetadataRow>& metadata) {
    Catalog catalog;
    std::map<int, TleRecord> latest;
    for (const auto& t : tles) {
        auto [it, inserted] = latest.emplace(t.norad_id, t);
        if (!inserted) {
            catalog.diagnostics.push_back(
                {"duplicate-tle", "NORAD " + std::to_string(t.norad_id) + ": kept the element set with the latest epoch"});
            if (t.epoch > it->second.epoch) it->second = t;
        }
    }

    // Per-source entries keyed by (norad_id, source).
    std::map<std::pair<int, std::string>, CatalogEntry> per_source;
    auto slot = [&](int id, const std::string& source) -> CatalogEntry& {
        auto& e = per_source[{id, source}];
        if (e.rcs_sources.empty()) {
            e.norad_id = id;
            e.rcs_sources.push_back({source, std::nullopt});
        }
        return e;
    };
    std::map<int, std::size_t> unknown;
    for (const auto& r : rcs) {
        if (!latest.count(r.norad_id)) {
            ++unknown[r.norad_id];
            continue;
        }
        auto& e = slot(r.norad_id, r.source);
        auto& v = e.rcs_sources.front().dbsm;
        if (r.dbsm && (!v || *r.dbsm > *v)) v = r.dbsm;
    }
    for (const auto& m : metadata) {
        if (!latest.count(m.norad_id)) {
            ++unknown[m.norad_id];
            continue;
        }
        auto& e = slot(m.norad_id, m.source);
        if (m.name && e.name.empty()) e.name = *m.name;
        take_first(e.owner, m.owner);
        take_first(e.operator_name, m.operator_name);
        take_first(e.manufacturer, m.manufacturer);
    }
    for (const auto& [id, n] : unknown) {
        catalog.diagnostics.push_back({"unknown-object", "NORAD " + std::to_string(id) + ": " + std::to_string(n) +
                                                             " row(s) without an element set skipped"});
    }

    std::vector<CatalogEntry> inputs;
    inputs.reserve(per_source.size());
    for (auto& [key, e] : per_source) inputs.push_back(std::move(e));
    auto merged = merge_rcs(inputs);
    std::map<int, CatalogEntry> by_id;
    for (auto& e : merged) by_id.emplace(e.norad_id, std::move(e));

    for (const auto& [id, tle] : latest) {
        CatalogEntry entry;
        if (auto it = by_id.find(id); it != by_id.end()) entry = std::move(it->second);
        entry.norad_id = id;
        if (entry.name.empty()) entry.name = !tle.name.empty() ? tle.name : "NORAD " + std::to_string(id);
        entry.orbit_class = classify_orbit(tle.mean_motion, tle.eccentricity);
        entry.rcs_missing = !entry.rcs_dbsm.has_value();
        catalog.entries.push_back(std::move(entry));
        catalog.tles.push_back(tle);
    }
    return catalog;
}

namespace {

nlohmann::json optional_json(const std::optional<std::string>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<std::string> optional_string(const nlohmann::json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<std::string>();
}

} // namespace

nlohmann::json catalog_to_json(const Catalog& catalog) {
    nlohmann::json objects = nlohmann::json::array();
    for (std::size_t i = 0; i < catalog.entries.size(); ++i) {
        const auto& e = catalog.entries[i];
        const auto lines = format_tle(catalog.tles[i]);
        nlohmann::json sources = nlohmann::json::array();
        for (const auto& s : e.rcs_sources) {
            sources.push_back({{"source", s.source}, {"dbsm", s.dbsm ? nlohmann::json(*s.dbsm) : nlohmann::json(nullptr)}});
        }
        objects.push_back({
            {"norad_id", e.norad_id},
            {"name", e.name},
            {"rcs_dbsm", e.rcs_dbsm ? nlohmann::json(*e.rcs_dbsm) : nlohmann::json(nullptr)},
            {"rcs_missing", e.rcs_missing},
            {"rcs_sources", sources},
            {"owner", optional_json(e.owner)},
            {"operator", optional_json(e.operator_name)},
            {"manufacturer", optional_json(e.manufacturer)},
            {"orbit_class", std::string(to_string(e.orbit_class))},
            {"tle", {{"name", catalog.tles[i].name}, {"line1", lines.first}, {"line2", lines.second}}},
        });
    }
    return {{"format", "ldit-catalog"}, {"version", 1}, {"objects", objects}};
}

Catalog catalog_from_json(const nlohmann::json& json) {
    if (!json.is_object() || json.value("format", "") != "ldit-catalog") {
        throw Error(ErrorKind::InvalidInput, "not an ldit catalog file");
    }
    Catalog catalog;
    try {
        for (const auto& o : json.at("objects")) {
            CatalogEntry e;
            e.norad_id = o.at("norad_id").get<int>();
            e.name = o.at("name").get<std::string>();
            if (!o.at("rcs_dbsm").is_null()) e.rcs_dbsm = o.at("rcs_dbsm").get<double>();
            e.rcs_missing = o.at("rcs_missing").get<bool>();
            for (const auto& s : o.at("rcs_sources")) {
                RcsSource src{s.at("source").get<std::string>(), std::nullopt};
                if (!s.at("dbsm").is_null()) src.dbsm = s.at("dbsm").get<double>();
                e.rcs_sources.push_back(std::move(src));
            }
            e.owner = optional_string(o.at("owner"));
            e.operator_name = optional_string(o.at("operator"));
            e.manufacturer = optional_string(o.at("manufacturer"));
            e.orbit_class = orbit_class_from_string(o.at("orbit_class").get<std::string>());
            const auto& t = o.at("tle");
            catalog.tles.push_back(parse_tle_lines(t.at("line1").get<std::string>(), t.at("line2").get<std::string>(),
                                                   t.at("name").get<std::string>()));
            catalog.entries.push_back(std::move(e));
        }
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorKind::InvalidInput, std::string("malformed catalog file: ") + ex.what());
    }
    return catalog;
}

std::string snapshot_id(const Catalog& catalog) {
    return to_hex(sha256(catalog_to_json(catalog).dump()));
}

} // namespace ldit
