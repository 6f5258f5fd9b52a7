#pragma once

#include <ldit/sgp4.hpp>
#include <ldit/time.hpp>
#include <ldit/tle.hpp>
#include <ldit/vec3.hpp>

#include <optional>

namespace ldit {

inline constexpr double kMuEarth = 398600.4418;       // km^3/s^2, WGS-84
inline constexpr double kEarthRadiusKm = 6378.137;    // WGS-84 equatorial
inline constexpr double kEarthFlattening = 1.0 / 298.257223563;
inline constexpr double kMaxPropagationDays = 30.0;

struct StateVector {
    UtcTime epoch;
    Vec3 position; // km, TEME
    Vec3 velocity; // km/s, TEME
};

struct AngularMomentum {
    Vec3 l;                   // kg km^2/s, or km^2/s with unit mass
    bool mass_assumed = true;
};

// Holds an initialized SGP4 model so repeated evaluations skip setup.
class Propagator {
public:
    explicit Propagator(const TleRecord& tle);

    // Throws EpochTooFar beyond +/-30 days of the element epoch, DecayedOrbit
    // when the radius falls below the Earth's, PropagationFailed otherwise.
    StateVector state_at(UtcTime t, ResonanceCache* cache = nullptr) const;

    const TleRecord& tle() const noexcept { return tle_; }
    const Sgp4& model() const noexcept { return model_; }

private:
    TleRecord tle_;
    Sgp4 model_;
};

StateVector propagate(const TleRecord& tle, UtcTime t);

AngularMomentum angular_momentum(const StateVector& state, std::optional<double> mass_kg = std::nullopt);

// Unit-mass momentum at epoch from the mean elements: magnitude
// sqrt(mu a (1 - e^2)), direction the orbit normal.
AngularMomentum momentum_from_elements(const TleRecord& tle);

double semi_major_axis_km(double mean_motion_rev_per_day) noexcept;
double orbital_period_minutes(double mean_motion_rev_per_day) noexcept;

// TEME to Earth-fixed through a GMST rotation; polar motion is ignored.
Vec3 teme_to_ecef(const Vec3& r_teme, UtcTime t) noexcept;

Vec3 geodetic_to_ecef(double latitude_deg, double longitude_deg, double altitude_m) noexcept;

// Precomputed station frame for repeated elevation queries.
class TopocentricFrame {
public:
    TopocentricFrame(double latitude_deg, double longitude_deg, double altitude_m) noexcept;

    double elevation_deg(const Vec3& target_ecef) const noexcept;
    const Vec3& origin() const noexcept { return origin_; }

private:
    Vec3 origin_;
    Vec3 up_;
};

} // namespace ldit
