#pragma once

#include <ldit/passes.hpp>
#include <ldit/stations.hpp>
#include <ldit/tle.hpp>

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace ldit {

struct TrackabilityConfig {
    int trials = 20;
    double subset_fraction = 0.5;
    std::optional<UtcTime> window_start; // default: latest element epoch in the catalog
    double window_days = 7.0;
    double step_s = 30.0;
    double mask_deg = 10.0;
    std::uint64_t seed = 42;
    unsigned threads = 0; // 0 = hardware concurrency

    void validate() const;
};

struct TrackabilityMetrics {
    int norad_id = 0;
    double avg_pass_duration_s = 0.0;
    std::optional<double> avg_interval_s;
    double coverage = 0.0;
    int trials = 0;
    // No observed rise or set at any station of the full network.
    bool no_events = false;
    std::size_t network_passes = 0;
};

struct TrackabilityScore {
    int norad_id = 0;
    double pass_component = 0.0;
    double interval_component = 0.0; // already inverted
    double coverage_component = 0.0;
    double d_t = 0.0;
};

struct TrackabilityDiagnostic {
    int norad_id = 0; // 0 for catalog-wide notes
    std::string kind;
    std::string message;
};

struct MonteCarloResult {
    std::vector<TrackabilityMetrics> metrics; // objects that propagated over the whole window
    std::vector<TrackabilityDiagnostic> diagnostics;
    PassWindow window;
};

// Samples ceil(subset_fraction * |stations|) stations per trial with a
// per-trial RNG derived from the seed. Passes are predicted once per
// (object, station) over the full network; trials only select stations.
// Throws NoStations.
MonteCarloResult monte_carlo_trackability(const std::vector<TleRecord>& catalog,
                                          const std::vector<GroundStation>& stations,
                                          const TrackabilityConfig& config);

// Station indices chosen for one trial.
std::vector<std::size_t> sample_stations(std::size_t station_count, double subset_fraction, std::uint64_t seed,
                                         int trial);

// Metrics for one object from precomputed per-station passes.
TrackabilityMetrics aggregate_trials(int norad_id, const std::vector<std::vector<PassEvent>>& passes_by_station,
                                     const std::vector<std::vector<std::size_t>>& trial_stations);

// Normalizes the components across the given objects and averages them.
// Throws DegenerateRange with fewer than two objects.
std::vector<TrackabilityScore> combine_trackability(const std::vector<TrackabilityMetrics>& metrics,
                                                    std::vector<TrackabilityDiagnostic>* diagnostics = nullptr);

nlohmann::json trackability_config_json(const TrackabilityConfig& config, const PassWindow& window);

} // namespace ldit
