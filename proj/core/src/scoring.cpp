#include <ldit/scoring.hpp>

#include <ldit/csv.hpp>
#include <ldit/error.hpp>

#include <algorithm>
#include <map>

namespace ldit {

double combine_dit(double s_d, double s_i, double s_t) {
    for (double v : {s_d, s_i, s_t}) {
        if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorKind::InvalidInput, "sub-scores must lie in [0, 1]");
    }
    double v[3] = {s_d, s_i, s_t};
    std::sort(v, v + 3);
    return (v[0] + v[1] + v[2]) / 3.0;
}

double combine_dit(const std::optional<double>& s_d, const std::optional<double>& s_i,
                   const std::optional<double>& s_t) {
    if (!s_d || !s_i || !s_t) {
        std::string missing;
        if (!s_d) missing += " s_d";
        if (!s_i) missing += " s_i";
        if (!s_t) missing += " s_t";
        throw Error(ErrorKind::MissingComponent, "missing" + missing);
    }
    return combine_dit(*s_d, *s_i, *s_t);
}

std::vector<ScoreCard> build_scorecards(const Catalog& catalog, const std::vector<DetectabilityScore>& detectability,
                                        const std::vector<IdentifiabilityScore>& identifiability,
                                        const std::vector<TrackabilityScore>& trackability,
                                        const std::string& snapshot_id) {
    std::map<int, double> d, i, t;
    for (const auto& s : detectability) d[s.norad_id] = s.s_d;
    for (const auto& s : identifiability) i[s.norad_id] = s.s_i;
    for (const auto& s : trackability) t[s.norad_id] = s.d_t;
    auto find = [](const std::map<int, double>& m, int id) -> std::optional<double> {
        const auto it = m.find(id);
        if (it == m.end()) return std::nullopt;
        return it->second;
    };

    std::vector<ScoreCard> cards;
    cards.reserve(catalog.entries.size());
    for (const auto& e : catalog.entries) {
        ScoreCard c;
        c.norad_id = e.norad_id;
        c.name = e.name;
        c.s_d = find(d, e.norad_id);
        c.s_i = find(i, e.norad_id);
        c.s_t = find(t, e.norad_id);
        if (c.s_d && c.s_i && c.s_t) c.s_dit = combine_dit(*c.s_d, *c.s_i, *c.s_t);
        c.snapshot_id = snapshot_id;
        cards.push_back(std::move(c));
    }
    return cards;
}

std::string_view to_string(EntityRole role) noexcept {
    switch (role) {
    case EntityRole::Owner: return "owner";
    case EntityRole::Operator: return "operator";
    case EntityRole::Manufacturer: return "manufacturer";
    }
    return "owner";
}

EntityRole entity_role_from_string(std::string_view s) {
    for (auto r : {EntityRole::Owner, EntityRole::Operator, EntityRole::Manufacturer}) {
        if (to_string(r) == s) return r;
    }
    throw Error(ErrorKind::InvalidInput, "unknown role '" + std::string(s) + "' (owner, operator, manufacturer)");
}

std::vector<EntityScore> entity_scores(const std::vector<ScoreCard>& cards, const std::vector<CatalogEntry>& catalog,
                                       EntityRole role) {
    std::map<int, const CatalogEntry*> by_id;
    for (const auto& e : catalog) by_id[e.norad_id] = &e;

    std::map<std::string, EntityScore> known;
    EntityScore unknown{std::string(kUnknownEntity), role, 0.0, 0, 0.0, true};
    for (const auto& c : cards) {
        if (!c.s_dit) continue;
        std::optional<std::string> name;
        if (const auto it = by_id.find(c.norad_id); it != by_id.end()) {
            const auto* e = it->second;
            name = role == EntityRole::Owner ? e->owner : role == EntityRole::Operator ? e->operator_name : e->manufacturer;
        }
        EntityScore& slot = name ? known[*name] : unknown;
        if (name && slot.asset_count == 0) {
            slot.entity_name = *name;
            slot.role = role;
        }
        slot.sum_s_dit += *c.s_dit;
        ++slot.asset_count;
    }

    std::vector<EntityScore> out;
    for (auto& [name, e] : known) out.push_back(std::move(e));
    if (unknown.asset_count > 0) out.push_back(std::move(unknown));
    for (auto& e : out) e.mean_s_dit = e.sum_s_dit / static_cast<double>(e.asset_count);
    return out;
}

std::string_view to_string(RankKey key) noexcept {
    switch (key) {
    case RankKey::SD: return "s_d";
    case RankKey::SI: return "s_i";
    case RankKey::ST: return "s_t";
    case RankKey::SDIT: return "s_dit";
    }
    return "s_dit";
}

RankKey rank_key_from_string(std::string_view s) {
    for (auto k : {RankKey::SD, RankKey::SI, RankKey::ST, RankKey::SDIT}) {
        if (to_string(k) == s) return k;
    }
    throw Error(ErrorKind::InvalidInput, "unknown rank key '" + std::string(s) + "' (s_d, s_i, s_t, s_dit)");
}

std::optional<double> score_for(const ScoreCard& card, RankKey key) noexcept {
    switch (key) {
    case RankKey::SD: return card.s_d;
    case RankKey::SI: return card.s_i;
    case RankKey::ST: return card.s_t;
    case RankKey::SDIT: return card.s_dit;
    }
    return std::nullopt;
}

std::vector<ScoreCard> rank(const std::vector<ScoreCard>& cards, RankKey key, bool descending, std::size_t top_n) {
    std::vector<ScoreCard> out;
    for (const auto& c : cards) {
        if (score_for(c, key)) out.push_back(c);
    }
    std::stable_sort(out.begin(), out.end(), [&](const ScoreCard& a, const ScoreCard& b) {
        const double x = *score_for(a, key);
        const double y = *score_for(b, key);
        if (x != y) return descending ? x > y : x < y;
        return a.norad_id < b.norad_id;
    });
    if (out.size() > top_n) out.resize(top_n);
    return out;
}

nlohmann::json spider_data(const ScoreCard& card) {
    if (!card.s_d || !card.s_i || !card.s_t) {
        throw Error(ErrorKind::MissingComponent, "NORAD " + std::to_string(card.norad_id) + " lacks a sub-score");
    }
    return {{"kind", "spider"},
            {"norad_id", card.norad_id},
            {"name", card.name},
            {"labels", {"S_D", "S_I", "S_T"}},
            {"axes", {*card.s_d, *card.s_i, *card.s_t}},
            {"s_dit", card.s_dit ? nlohmann::json(*card.s_dit) : nlohmann::json(nullptr)}};
}

std::string scores_csv(const std::vector<ScoreCard>& cards) {
    std::string out = "norad_id,name,s_d,s_i,s_t,s_dit\n";
    for (const auto& c : cards) {
        out += csv::join({std::to_string(c.norad_id), c.name, csv::fixed6(c.s_d), csv::fixed6(c.s_i),
                          csv::fixed6(c.s_t), csv::fixed6(c.s_dit)});
        out += '\n';
    }
    return out;
}

std::vector<ScoreCard> parse_scores_csv(std::string_view text, std::string_view source_name) {
    const auto table = csv::parse_with_header(text, "norad_id,name,s_d,s_i,s_t,s_dit", source_name);
    std::vector<ScoreCard> cards;
    for (const auto& r : table.rows) {
        ScoreCard c;
        c.norad_id = static_cast<int>(csv::parse_int(r.fields[0]));
        c.name = r.fields[1];
        c.s_d = csv::parse_optional_double(r.fields[2]);
        c.s_i = csv::parse_optional_double(r.fields[3]);
        c.s_t = csv::parse_optional_double(r.fields[4]);
        c.s_dit = csv::parse_optional_double(r.fields[5]);
        cards.push_back(std::move(c));
    }
    return cards;
}

std::string entities_csv(const std::vector<EntityScore>& entities) {
    std::string out = "entity,role,mean_s_dit,asset_count\n";
    for (const auto& e : entities) {
        out += csv::join({e.entity_name, std::string(to_string(e.role)), csv::fixed6(e.mean_s_dit),
                          std::to_string(e.asset_count)});
        out += '\n';
    }
    return out;
}

namespace {

nlohmann::json opt(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

std::optional<double> opt_double(const nlohmann::json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

} // namespace

nlohmann::json scorecard_to_json(const ScoreCard& c) {
    return {{"norad_id", c.norad_id}, {"name", c.name},   {"s_d", opt(c.s_d)},       {"s_i", opt(c.s_i)},
            {"s_t", opt(c.s_t)},      {"s_dit", opt(c.s_dit)}, {"snapshot_id", c.snapshot_id}};
}

ScoreCard scorecard_from_json(const nlohmann::json& j) {
    ScoreCard c;
    c.norad_id = j.at("norad_id").get<int>();
    c.name = j.at("name").get<std::string>();
    c.s_d = opt_double(j.at("s_d"));
    c.s_i = opt_double(j.at("s_i"));
    c.s_t = opt_double(j.at("s_t"));
    c.s_dit = opt_double(j.at("s_dit"));
    c.snapshot_id = j.at("snapshot_id").get<std::string>();
    return c;
}

} // namespace ldit
