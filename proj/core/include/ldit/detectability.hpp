#pragma once

#include <ldit/catalog.hpp>

#include <nlohmann/json.hpp>
#include <vector>

namespace ldit {

struct DetectabilityScore {
    int norad_id = 0;
    double s_d = 0.0;
};

// Min-max normalized RCS over entries that have one, in input order.
// Entries without RCS are omitted. Throws DegenerateRange with fewer than two
// valid entries or when all values are equal.
std::vector<DetectabilityScore> score_detectability(const std::vector<CatalogEntry>& catalog);

// Same rule over raw values.
std::vector<double> min_max_normalize(const std::vector<double>& values);

// Fixed-width histogram over [0, 1].
nlohmann::json score_histogram_json(const std::vector<double>& scores, int bins, const std::string& label);

} // namespace ldit
