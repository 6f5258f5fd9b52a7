#pragma once

#include <ldit/catalog.hpp>

#include <nlohmann/json.hpp>
#include <vector>

namespace ldit {

struct CorrelationReport {
    double pearson_r = 0.0;
    std::size_t n = 0;
    double slope = 0.0;     // magnitude per dBsm
    double intercept = 0.0;
    std::vector<int> norad_ids;
    std::vector<double> rcs_dbsm;
    std::vector<double> std_magnitude;
};

// Pairs catalog RCS with magnitudes by norad_id. Needs at least three pairs
// (InsufficientOverlap) with spread on both axes (DegenerateVariance).
// Duplicate magnitude rows for one object are averaged.
CorrelationReport correlate_rcs_magnitude(const std::vector<CatalogEntry>& catalog,
                                          const std::vector<MagnitudeObservation>& mags);

// Plot data: scatter points plus the fitted line.
nlohmann::json correlation_plot_json(const CorrelationReport& report);

} // namespace ldit
