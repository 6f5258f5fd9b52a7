#include <ldit/passes.hpp>

#include <ldit/error.hpp>

#include <cmath>

namespace ldit {

namespace {

// Only sampled local maxima this close below the mask are searched for a
// pass hidden between samples.
constexpr double kGrazingMarginDeg = 5.0;
constexpr double kPeakToleranceS = 0.1;
constexpr double kInvPhi = 0.6180339887498949;

struct ElevationFn {
    const Propagator& prop;
    const TopocentricFrame& frame;
    UtcTime start;

    double operator()(double offset_s) const {
        const UtcTime t = start.plus_seconds(offset_s);
        return frame.elevation_deg(teme_to_ecef(prop.state_at(t).position, t));
    }
};

// Crossing between lo (state lo_above) and hi (the other state).
double bisect_crossing(const ElevationFn& el, double mask, double lo, double hi, bool lo_above) {
    while (hi - lo > kCrossingToleranceS) {
        const double mid = 0.5 * (lo + hi);
        if ((el(mid) > mask) == lo_above) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Golden-section maximum on [a, b]; returns (offset, elevation).
std::pair<double, double> maximize(const ElevationFn& el, double a, double b) {
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = el(c);
    double fd = el(d);
    while (b - a > kPeakToleranceS) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = el(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = el(d);
        }
    }
    return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

void validate(const PassWindow& w) {
    if (!(w.end > w.start)) throw Error(ErrorKind::InvalidInput, "pass window must have positive length");
    if (!(w.step_s >= 1.0 && w.step_s <= 300.0)) {
        throw Error(ErrorKind::InvalidInput, "pass step must be within [1, 300] s");
    }
}

std::vector<double> sample_offsets(const PassWindow& w) {
    const double length = w.end.seconds_since(w.start);
    std::vector<double> t;
    const auto n = static_cast<std::size_t>(std::floor(length / w.step_s));
    t.reserve(n + 2);
    for (std::size_t i = 0; i <= n; ++i) t.push_back(static_cast<double>(i) * w.step_s);
    if (t.back() < length) t.push_back(length);
    return t;
}

// Turns sampled elevations into refined passes.
std::vector<PassEvent> extract_passes(const std::vector<double>& t, const std::vector<double>& el,
                                      const ElevationFn& fn, double mask, int norad_id,
                                      const std::string& station_id) {
    std::vector<PassEvent> out;
    const std::size_t n = t.size();
    auto make = [&](double rise, double set, bool rise_obs, bool set_obs, double peak) {
        PassEvent p;
        p.norad_id = norad_id;
        p.station_id = station_id;
        p.rise = fn.start.plus_seconds(rise);
        p.set = fn.start.plus_seconds(set);
        p.rise_observed = rise_obs;
        p.set_observed = set_obs;
        p.max_elevation_deg = peak;
        out.push_back(std::move(p));
    };

    std::size_t i = 0;
    while (i < n) {
        if (el[i] > mask) {
            const std::size_t first = i;
            std::size_t best = i;
            while (i + 1 < n && el[i + 1] > mask) {
                ++i;
                if (el[i] > el[best]) best = i;
            }
            const std::size_t last = i;
            const bool rise_obs = first > 0;
            const bool set_obs = last + 1 < n;
            const double rise = rise_obs ? bisect_crossing(fn, mask, t[first - 1], t[first], false) : t[first];
            const double set = set_obs ? bisect_crossing(fn, mask, t[last], t[last + 1], true) : t[last];
            const double a = best > 0 ? std::max(t[best - 1], rise) : t[best];
            const double b = best + 1 < n ? std::min(t[best + 1], set) : t[best];
            double peak = el[best];
            if (b > a) peak = std::max(peak, maximize(fn, a, b).second);
            if (set > rise) make(rise, set, rise_obs, set_obs, peak);
            ++i;
            continue;
        }
        // Short pass hiding between samples around a sampled local maximum.
        if (i > 0 && i + 1 < n && el[i] > mask - kGrazingMarginDeg && el[i] >= el[i - 1] && el[i] >= el[i + 1]) {
            const auto [tp, peak] = maximize(fn, t[i - 1], t[i + 1]);
            if (peak > mask) {
                const double rise = bisect_crossing(fn, mask, t[i - 1], tp, false);
                const double set = bisect_crossing(fn, mask, tp, t[i + 1], true);
                if (set > rise) make(rise, set, true, true, peak);
            }
        }
        ++i;
    }
    return out;
}

} // namespace

std::vector<PassEvent> predict_passes(const TleRecord& tle, const GroundStation& station, const PassWindow& window,
                                      double mask_deg) {
    return PassPredictor({station}, window, mask_deg).predict(tle).front();
}

PassPredictor::PassPredictor(std::vector<GroundStation> stations, PassWindow window, double mask_deg)
    : stations_(std::move(stations)), window_(window) {
    validate(window_);
    for (const auto& s : stations_) {
        frames_.emplace_back(s.latitude_deg, s.longitude_deg, s.altitude_m);
        masks_.push_back(std::max(mask_deg, s.min_elevation_deg));
    }
    offsets_s_ = sample_offsets(window_);
    for (double off : offsets_s_) {
        const double g = gmst_radians(window_.start.plus_seconds(off).julian_date());
        gmst_cos_.push_back(std::cos(g));
        gmst_sin_.push_back(std::sin(g));
    }
}

std::vector<std::vector<PassEvent>> PassPredictor::predict(const TleRecord& tle) const {
    const Propagator prop(tle);
    const std::size_t n = offsets_s_.size();
    std::vector<Vec3> ecef(n);
    ResonanceCache cache;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 r = prop.state_at(window_.start.plus_seconds(offsets_s_[i]), &cache).position;
        ecef[i] = {gmst_cos_[i] * r.x + gmst_sin_[i] * r.y, -gmst_sin_[i] * r.x + gmst_cos_[i] * r.y, r.z};
    }

    std::vector<std::vector<PassEvent>> out(stations_.size());
    std::vector<double> el(n);
    for (std::size_t s = 0; s < stations_.size(); ++s) {
        for (std::size_t i = 0; i < n; ++i) el[i] = frames_[s].elevation_deg(ecef[i]);
        const ElevationFn fn{prop, frames_[s], window_.start};
        out[s] = extract_passes(offsets_s_, el, fn, masks_[s], tle.norad_id, stations_[s].station_id);
    }
    return out;
}

} // namespace ldit
