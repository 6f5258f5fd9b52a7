#include <ldit/orbit.hpp>

#include <ldit/error.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ldit {

namespace {

constexpr double kDeg2Rad = std::numbers::pi / 180.0;

} // namespace

Propagator::Propagator(const TleRecord& tle) : tle_(tle), model_(tle) {
    if (model_.init_error() == 6) {
        throw Error(ErrorKind::DecayedOrbit, "NORAD " + std::to_string(tle.norad_id) + " decayed at epoch");
    }
    if (model_.init_error() != 0) {
        throw Error(ErrorKind::PropagationFailed, "NORAD " + std::to_string(tle.norad_id) +
                                                      " failed to initialize (sgp4 error " +
                                                      std::to_string(model_.init_error()) + ")");
    }
}

StateVector Propagator::state_at(UtcTime t, ResonanceCache* cache) const {
    const double dt_s = t.seconds_since(tle_.epoch);
    if (std::fabs(dt_s) > kMaxPropagationDays * kSecondsPerDay) {
        throw Error(ErrorKind::EpochTooFar, "NORAD " + std::to_string(tle_.norad_id) + ": " + t.to_iso8601() +
                                                " is more than 30 days from the element epoch");
    }
    const auto r = model_.propagate(dt_s / 60.0, cache);
    if (r.error == 6 || (r.error == 0 && norm(r.position) < kEarthRadiusKm)) {
        throw Error(ErrorKind::DecayedOrbit, "NORAD " + std::to_string(tle_.norad_id) + " decayed before " +
                                                 t.to_iso8601());
    }
    if (r.error != 0) {
        throw Error(ErrorKind::PropagationFailed, "NORAD " + std::to_string(tle_.norad_id) + ": sgp4 error " +
                                                      std::to_string(r.error));
    }
    return {t, r.position, r.velocity};
}

StateVector propagate(const TleRecord& tle, UtcTime t) {
    return Propagator(tle).state_at(t);
}

AngularMomentum angular_momentum(const StateVector& state, std::optional<double> mass_kg) {
    const double m = mass_kg.value_or(1.0);
    return {cross(state.position, m * state.velocity), !mass_kg.has_value()};
}

double semi_major_axis_km(double mean_motion_rev_per_day) noexcept {
    const double n = mean_motion_rev_per_day * 2.0 * std::numbers::pi / kSecondsPerDay;
    return std::cbrt(kMuEarth / (n * n));
}

double orbital_period_minutes(double mean_motion_rev_per_day) noexcept {
    return 1440.0 / mean_motion_rev_per_day;
}

AngularMomentum momentum_from_elements(const TleRecord& tle) {
    const double a = semi_major_axis_km(tle.mean_motion);
    const double e = tle.eccentricity;
    const double h = std::sqrt(kMuEarth * a * (1.0 - e * e));
    const double i = tle.inclination * kDeg2Rad;
    const double raan = tle.raan * kDeg2Rad;
    const Vec3 normal{std::sin(i) * std::sin(raan), -std::sin(i) * std::cos(raan), std::cos(i)};
    return {h * normal, true};
}

Vec3 teme_to_ecef(const Vec3& r, UtcTime t) noexcept {
    const double g = gmst_radians(t.julian_date());
    const double c = std::cos(g);
    const double s = std::sin(g);
    return {c * r.x + s * r.y, -s * r.x + c * r.y, r.z};
}

Vec3 geodetic_to_ecef(double latitude_deg, double longitude_deg, double altitude_m) noexcept {
    const double lat = latitude_deg * kDeg2Rad;
    const double lon = longitude_deg * kDeg2Rad;
    const double e2 = kEarthFlattening * (2.0 - kEarthFlattening);
    const double sin_lat = std::sin(lat);
    const double n = kEarthRadiusKm / std::sqrt(1.0 - e2 * sin_lat * sin_lat);
    const double h = altitude_m / 1000.0;
    return {(n + h) * std::cos(lat) * std::cos(lon), (n + h) * std::cos(lat) * std::sin(lon),
            (n * (1.0 - e2) + h) * sin_lat};
}

TopocentricFrame::TopocentricFrame(double latitude_deg, double longitude_deg, double altitude_m) noexcept
    : origin_(geodetic_to_ecef(latitude_deg, longitude_deg, altitude_m)) {
    const double lat = latitude_deg * kDeg2Rad;
    const double lon = longitude_deg * kDeg2Rad;
    up_ = {std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
}

double TopocentricFrame::elevation_deg(const Vec3& target_ecef) const noexcept {
    const Vec3 d = target_ecef - origin_;
    const double range = norm(d);
    if (range == 0.0) return 90.0;
    const double s = std::clamp(dot(d, up_) / range, -1.0, 1.0);
    return std::asin(s) / kDeg2Rad;
}

} // namespace ldit
