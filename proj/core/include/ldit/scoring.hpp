#pragma once

#include <ldit/catalog.hpp>
#include <ldit/detectability.hpp>
#include <ldit/identifiability.hpp>
#include <ldit/trackability.hpp>

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ldit {

struct ScoreCard {
    int norad_id = 0;
    std::string name;
    std::optional<double> s_d;
    std::optional<double> s_i;
    std::optional<double> s_t;
    std::optional<double> s_dit; // present only when all three are
    std::string snapshot_id;

    friend bool operator==(const ScoreCard&, const ScoreCard&) = default;
};

// Equal-weight mean. Exact under any permutation of the arguments. Throws
// InvalidInput for values outside [0, 1].
double combine_dit(double s_d, double s_i, double s_t);
// Throws MissingComponent when any argument is absent.
double combine_dit(const std::optional<double>& s_d, const std::optional<double>& s_i,
                   const std::optional<double>& s_t);

// One card per catalog entry, in catalog order.
std::vector<ScoreCard> build_scorecards(const Catalog& catalog, const std::vector<DetectabilityScore>& detectability,
                                        const std::vector<IdentifiabilityScore>& identifiability,
                                        const std::vector<TrackabilityScore>& trackability,
                                        const std::string& snapshot_id);

enum class EntityRole { Owner, Operator, Manufacturer };
std::string_view to_string(EntityRole role) noexcept;
EntityRole entity_role_from_string(std::string_view s);

inline constexpr std::string_view kUnknownEntity = "UNKNOWN";

struct EntityScore {
    std::string entity_name;
    EntityRole role = EntityRole::Owner;
    double mean_s_dit = 0.0;
    std::size_t asset_count = 0;
    double sum_s_dit = 0.0;
    bool unknown = false;
};

// Means of S_DIT per entity over cards that have one. Known entities are
// ordered by name; the UNKNOWN group, if any, comes last.
std::vector<EntityScore> entity_scores(const std::vector<ScoreCard>& cards, const std::vector<CatalogEntry>& catalog,
                                       EntityRole role);

enum class RankKey { SD, SI, ST, SDIT };
std::string_view to_string(RankKey key) noexcept;
// Throws InvalidInput for anything but s_d, s_i, s_t, s_dit.
RankKey rank_key_from_string(std::string_view s);
std::optional<double> score_for(const ScoreCard& card, RankKey key) noexcept;

// Cards lacking the key are left out. Ties go to the lower norad_id.
std::vector<ScoreCard> rank(const std::vector<ScoreCard>& cards, RankKey key, bool descending, std::size_t top_n);

// Throws MissingComponent for a partial card.
nlohmann::json spider_data(const ScoreCard& card);

std::string scores_csv(const std::vector<ScoreCard>& cards);
std::vector<ScoreCard> parse_scores_csv(std::string_view text, std::string_view source_name = "scores.csv");
std::string entities_csv(const std::vector<EntityScore>& entities);

nlohmann::json scorecard_to_json(const ScoreCard& card);
ScoreCard scorecard_from_json(const nlohmann::json& json);

} // namespace ldit
