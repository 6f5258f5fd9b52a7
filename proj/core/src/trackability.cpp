#include <ldit/trackability.hpp>

#include <ldit/error.hpp>

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ldit {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Normalized {
    std::vector<double> values;
    bool degenerate = false;
};

// Min-max over values; a degenerate range keeps values already in [0, 1] and
// zeroes the rest.
Normalized normalize_component(const std::vector<double>& raw) {
    Normalized out;
    if (raw.empty()) return out;
    const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
    const double range = *hi - *lo;
    if (raw.size() < 2 || !(range > 0.0)) {
        out.degenerate = true;
        for (double v : raw) out.values.push_back(v >= 0.0 && v <= 1.0 ? v : 0.0);
        return out;
    }
    for (double v : raw) {
        out.values.push_back(v == *lo ? 0.0 : v == *hi ? 1.0 : (v - *lo) / range);
    }
    return out;
}

double mean3(double a, double b, double c) {
    // Sorted summation makes the result independent of argument order.
    double v[3] = {a, b, c};
    std::sort(v, v + 3);
    return (v[0] + v[1] + v[2]) / 3.0;
}

} // namespace

void TrackabilityConfig::validate() const {
    if (trials < 1) throw Error(ErrorKind::InvalidInput, "trials must be at least 1");
    if (!(subset_fraction > 0.0 && subset_fraction <= 1.0)) {
        throw Error(ErrorKind::InvalidInput, "subset_fraction must be in (0, 1]");
    }
    if (!(window_days > 0.0 && window_days <= 30.0)) {
        throw Error(ErrorKind::InvalidInput, "window_days must be in (0, 30]");
    }
    if (!(step_s >= 1.0 && step_s <= 300.0)) throw Error(ErrorKind::InvalidInput, "step_s must be in [1, 300]");
    if (!(mask_deg >= -90.0 && mask_deg <= 90.0)) {
        throw Error(ErrorKind::InvalidInput, "mask_deg must be in [-90, 90]");
    }
}

std::vector<std::size_t> sample_stations(std::size_t station_count, double subset_fraction, std::uint64_t seed,
                                         int trial) {
    auto m = static_cast<std::size_t>(std::ceil(subset_fraction * static_cast<double>(station_count) - 1e-12));
    m = std::clamp<std::size_t>(m, 1, station_count);
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(trial))));
    std::vector<std::size_t> idx(station_count);
    for (std::size_t i = 0; i < station_count; ++i) idx[i] = i;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng() % (station_count - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(m);
    std::sort(idx.begin(), idx.end());
    return idx;
}

TrackabilityMetrics aggregate_trials(int norad_id, const std::vector<std::vector<PassEvent>>& passes_by_station,
                                     const std::vector<std::vector<std::size_t>>& trial_stations) {
    TrackabilityMetrics m;
    m.norad_id = norad_id;
    m.trials = static_cast<int>(trial_stations.size());
    m.no_events = true;
    for (const auto& station : passes_by_station) {
        m.network_passes += station.size();
        for (const auto& p : station) {
            if (p.rise_observed || p.set_observed) m.no_events = false;
        }
    }

    double duration_sum = 0.0;
    int duration_trials = 0;
    double interval_sum = 0.0;
    int interval_trials = 0;
    double coverage_sum = 0.0;
    for (const auto& stations : trial_stations) {
        double dur = 0.0;
        std::size_t passes = 0;
        double gap = 0.0;
        std::size_t gaps = 0;
        std::size_t seen = 0;
        for (auto s : stations) {
            const auto& ps = passes_by_station[s];
            if (!ps.empty()) ++seen;
            for (std::size_t i = 0; i < ps.size(); ++i) {
                dur += ps[i].duration_s();
                ++passes;
                if (i > 0) {
                    gap += ps[i].rise.seconds_since(ps[i - 1].set);
                    ++gaps;
                }
            }
        }
        if (passes > 0) {
            duration_sum += dur / static_cast<double>(passes);
            ++duration_trials;
        }
        if (gaps > 0) {
            interval_sum += gap / static_cast<double>(gaps);
            ++interval_trials;
        }
        coverage_sum += stations.empty() ? 0.0 : static_cast<double>(seen) / static_cast<double>(stations.size());
    }
    if (duration_trials > 0) m.avg_pass_duration_s = duration_sum / duration_trials;
    if (interval_trials > 0) m.avg_interval_s = interval_sum / interval_trials;
    if (m.trials > 0) m.coverage = coverage_sum / m.trials;
    return m;
}

MonteCarloResult monte_carlo_trackability(const std::vector<TleRecord>& catalog,
                                          const std::vector<GroundStation>& stations,
                                          const TrackabilityConfig& config) {
    config.validate();
    if (stations.empty()) throw Error(ErrorKind::NoStations, "trackability needs at least one ground station");

    MonteCarloResult result;
    UtcTime start;
    if (config.window_start) {
        start = *config.window_start;
    } else {
        if (catalog.empty()) throw Error(ErrorKind::InvalidInput, "empty catalog and no window start");
        start = std::max_element(catalog.begin(), catalog.end(),
                                 [](const TleRecord& a, const TleRecord& b) { return a.epoch < b.epoch; })
                    ->epoch;
    }
    result.window = {start, start.plus_seconds(config.window_days * kSecondsPerDay), config.step_s};
    const PassPredictor predictor(stations, result.window, config.mask_deg);

    std::vector<std::vector<std::size_t>> trial_stations;
    for (int t = 0; t < config.trials; ++t) {
        trial_stations.push_back(sample_stations(stations.size(), config.subset_fraction, config.seed, t));
    }

    std::vector<std::optional<TrackabilityMetrics>> per_object(catalog.size());
    std::vector<std::optional<TrackabilityDiagnostic>> errors(catalog.size());
    detail::parallel_for(catalog.size(), config.threads, [&](std::size_t i) {
        try {
            const auto passes = predictor.predict(catalog[i]);
            per_object[i] = aggregate_trials(catalog[i].norad_id, passes, trial_stations);
        } catch (const Error& e) {
            errors[i] = TrackabilityDiagnostic{catalog[i].norad_id, std::string(to_string(e.kind())), e.what()};
        }
    });
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        if (per_object[i]) result.metrics.push_back(std::move(*per_object[i]));
        if (errors[i]) result.diagnostics.push_back(std::move(*errors[i]));
    }
    return result;
}

std::vector<TrackabilityScore> combine_trackability(const std::vector<TrackabilityMetrics>& metrics,
                                                    std::vector<TrackabilityDiagnostic>* diagnostics) {
    if (metrics.size() < 2) {
        throw Error(ErrorKind::DegenerateRange,
                    "trackability: need at least 2 objects with metrics, have " + std::to_string(metrics.size()));
    }
    auto note = [&](const std::string& message) {
        if (diagnostics) diagnostics->push_back({0, "degenerate-range", message});
    };

    std::vector<std::size_t> with_passes, with_interval;
    std::vector<double> durations, intervals;
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        if (metrics[i].no_events) continue;
        with_passes.push_back(i);
        durations.push_back(metrics[i].avg_pass_duration_s);
        if (metrics[i].avg_interval_s) {
            with_interval.push_back(i);
            intervals.push_back(*metrics[i].avg_interval_s);
        }
    }

    const auto dur_n = normalize_component(durations);
    if (dur_n.degenerate) note("pass-duration component has no spread across " + std::to_string(durations.size()) + " objects");
    const auto int_n = normalize_component(intervals);
    if (int_n.degenerate) note("interval component has no spread across " + std::to_string(intervals.size()) + " objects");

    std::vector<TrackabilityScore> out(metrics.size());
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        out[i].norad_id = metrics[i].norad_id;
        if (metrics[i].no_events) {
            out[i].pass_component = 0.0;
            out[i].interval_component = 1.0;
            out[i].coverage_component = 0.0;
        } else {
            out[i].coverage_component = std::clamp(metrics[i].coverage, 0.0, 1.0);
        }
    }
    for (std::size_t j = 0; j < with_passes.size(); ++j) out[with_passes[j]].pass_component = dur_n.values[j];
    for (std::size_t j = 0; j < with_interval.size(); ++j) {
        out[with_interval[j]].interval_component = int_n.degenerate ? int_n.values[j] : 1.0 - int_n.values[j];
    }
    for (auto& s : out) s.d_t = mean3(s.pass_component, s.interval_component, s.coverage_component);
    return out;
}

nlohmann::json trackability_config_json(const TrackabilityConfig& config, const PassWindow& window) {
    return {{"trials", config.trials},
            {"subset_fraction", config.subset_fraction},
            {"window_start", window.start.to_iso8601()},
            {"window_end", window.end.to_iso8601()},
            {"window_days", config.window_days},
            {"step_s", config.step_s},
            {"mask_deg", config.mask_deg},
            {"seed", config.seed}};
}

} // namespace ldit
