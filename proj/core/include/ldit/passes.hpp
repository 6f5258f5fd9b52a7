#pragma once

#include <ldit/orbit.hpp>
#include <ldit/stations.hpp>
#include <ldit/time.hpp>
#include <ldit/tle.hpp>

#include <string>
#include <vector>

namespace ldit {

struct PassEvent {
    int norad_id = 0;
    std::string station_id;
    UtcTime rise;
    UtcTime set;
    double max_elevation_deg = 0.0;
    // False when the pass was already in progress at the window start (rise)
    // or still in progress at the window end (set).
    bool rise_observed = true;
    bool set_observed = true;

    double duration_s() const noexcept { return set.seconds_since(rise); }
};

struct PassWindow {
    UtcTime start;
    UtcTime end;
    double step_s = 30.0;
};

// Crossing times are refined to within this many seconds.
inline constexpr double kCrossingToleranceS = 1.0;

// Elevation mask crossings of one object over one station. The window is
// sampled every step seconds; sign changes are bisected and sampled local
// maxima just below the mask are searched for short passes between samples.
// Throws InvalidInput for an empty window or a step outside [1, 300] s and
// propagation errors for the object.
std::vector<PassEvent> predict_passes(const TleRecord& tle, const GroundStation& station, const PassWindow& window,
                                      double mask_deg);

// Batch form: one propagation per time step shared by every station. Each
// station uses max(mask_deg, its own min_elevation_deg). Result is indexed
// like `stations`.
class PassPredictor {
public:
    PassPredictor(std::vector<GroundStation> stations, PassWindow window, double mask_deg);

    std::vector<std::vector<PassEvent>> predict(const TleRecord& tle) const;

    const std::vector<GroundStation>& stations() const noexcept { return stations_; }
    const PassWindow& window() const noexcept { return window_; }
    double mask_for(std::size_t station) const noexcept { return masks_[station]; }

private:
    std::vector<GroundStation> stations_;
    std::vector<TopocentricFrame> frames_;
    std::vector<double> masks_;
    PassWindow window_;
    std::vector<double> offsets_s_;   // sample times relative to window start
    std::vector<double> gmst_cos_;
    std::vector<double> gmst_sin_;
};

} // namespace ldit
