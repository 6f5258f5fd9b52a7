#pragma once

#include <ldit/tle.hpp>
#include <ldit/vec3.hpp>

namespace ldit {

enum class GravityModel { Wgs72Old, Wgs72, Wgs84 };

struct GravityConstants {
    double tumin;
    double mu;            // km^3/s^2
    double radius_earth;  // km
    double xke;
    double j2;
    double j3;
    double j4;
    double j3oj2;
};

GravityConstants gravity_constants(GravityModel model) noexcept;

// Mean elements in SGP4 units: radians, radians/minute, epoch in days since
// 1949-12-31 00:00 UT.
struct Sgp4Elements {
    double epoch_days_1950 = 0.0;
    double bstar = 0.0;
    double ndot = 0.0;
    double nddot = 0.0;
    double eccentricity = 0.0;
    double arg_perigee = 0.0;
    double inclination = 0.0;
    double mean_anomaly = 0.0;
    double mean_motion = 0.0; // Kozai mean motion, rad/min
    double raan = 0.0;

    static Sgp4Elements from_tle(const TleRecord& tle);
};

// Error codes follow the reference implementation:
// 1 mean eccentricity out of range, 2 mean motion <= 0,
// 3 perturbed eccentricity out of range, 4 semi-latus rectum < 0,
// 6 satellite has decayed (radius < 1 earth radius).
struct Sgp4Result {
    int error = 0;
    Vec3 position; // km, TEME
    Vec3 velocity; // km/s, TEME
};

// Deep-space resonance integrator state. Passing the same cache to
// successive calls lets the integrator resume instead of restarting at the
// epoch; results are identical either way.
struct ResonanceCache {
    double atime = 0.0;
    double xli = 0.0;
    double xni = 0.0;
};

// SGP4/SDP4 analytic propagator ("improved" operation mode). Immutable after
// construction; `propagate` is const and thread-safe.
class Sgp4 {
public:
    explicit Sgp4(const TleRecord& tle, GravityModel model = GravityModel::Wgs72);
    Sgp4(const Sgp4Elements& elements, GravityModel model = GravityModel::Wgs72);

    // tsince in minutes from the element epoch.
    Sgp4Result propagate(double tsince_minutes, ResonanceCache* cache = nullptr) const;

    int init_error() const noexcept { return init_error_; }
    bool deep_space() const noexcept { return method_ == 'd'; }
    double gsto() const noexcept { return gsto_; }
    // Un-Kozai'd mean motion, rad/min.
    double mean_motion() const noexcept { return no_unkozai_; }
    const GravityConstants& constants() const noexcept { return grav_; }

private:
    void init(const Sgp4Elements& el);

    struct DeepSpaceLongPeriod {
        double ep, inclp, nodep, argpp, mp;
    };
    void dpper(double t, bool init, DeepSpaceLongPeriod& p) const;

    GravityConstants grav_{};
    int init_error_ = 0;

    // Near-earth
    int isimp_ = 0;
    char method_ = 'n';
    double aycof_ = 0, con41_ = 0, cc1_ = 0, cc4_ = 0, cc5_ = 0, d2_ = 0, d3_ = 0, d4_ = 0;
    double delmo_ = 0, eta_ = 0, argpdot_ = 0, omgcof_ = 0, sinmao_ = 0;
    double t2cof_ = 0, t3cof_ = 0, t4cof_ = 0, t5cof_ = 0, x1mth2_ = 0, x7thm1_ = 0;
    double mdot_ = 0, nodedot_ = 0, xlcof_ = 0, xmcof_ = 0, nodecf_ = 0;

    // Deep space
    int irez_ = 0;
    double d2201_ = 0, d2211_ = 0, d3210_ = 0, d3222_ = 0, d4410_ = 0, d4422_ = 0;
    double d5220_ = 0, d5232_ = 0, d5421_ = 0, d5433_ = 0;
    double dedt_ = 0, del1_ = 0, del2_ = 0, del3_ = 0, didt_ = 0, dmdt_ = 0, dnodt_ = 0, domdt_ = 0;
    double e3_ = 0, ee2_ = 0, peo_ = 0, pgho_ = 0, pho_ = 0, pinco_ = 0, plo_ = 0;
    double se2_ = 0, se3_ = 0, sgh2_ = 0, sgh3_ = 0, sgh4_ = 0, sh2_ = 0, sh3_ = 0;
    double si2_ = 0, si3_ = 0, sl2_ = 0, sl3_ = 0, sl4_ = 0, gsto_ = 0, xfact_ = 0;
    double xgh2_ = 0, xgh3_ = 0, xgh4_ = 0, xh2_ = 0, xh3_ = 0, xi2_ = 0, xi3_ = 0;
    double xl2_ = 0, xl3_ = 0, xl4_ = 0, xlamo_ = 0, zmol_ = 0, zmos_ = 0;
    double atime_ = 0, xli_ = 0, xni_ = 0;

    // Elements
    double bstar_ = 0, ecco_ = 0, argpo_ = 0, inclo_ = 0, mo_ = 0, no_kozai_ = 0, nodeo_ = 0;
    double no_unkozai_ = 0;
};

// Greenwich mean sidereal time (IAU-82), radians, for a UT1 Julian date.
double gmst_radians(double jd_ut1) noexcept;

} // namespace ldit
