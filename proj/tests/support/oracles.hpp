#pragma once

// Independent reference implementations used to check the library. None of
// these call into ldit except for the SGP4 model itself, which has its own
// verification against externally generated vectors.

#include <ldit/sgp4.hpp>
#include <ldit/stations.hpp>
#include <ldit/tle.hpp>
#include <ldit/vec3.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace oracle {

// Mod-10 TLE checksum written directly from the format definition.
int checksum(std::string_view line);

// (v - min) / (max - min), one line.
double detectability(double v, double lo, double hi);

// Two-body state from classical elements; angles in radians, a in km.
struct KeplerElements {
    double a, e, i, raan, argp, mean_anomaly;
};
struct TwoBodyState {
    ldit::Vec3 r;
    ldit::Vec3 v;
};
TwoBodyState kepler_state(const KeplerElements& el, double mu);

double pearson(const std::vector<double>& x, const std::vector<double>& y);

// Elevation of a TEME position seen from a station, with its own GMST and
// ellipsoid code.
double elevation_deg(const ldit::Vec3& r_teme, double jd_ut1, const ldit::GroundStation& station);

struct DensePass {
    double rise_unix;
    double set_unix;
};
// Samples every step_s seconds over [start, end]; a pass is a maximal run of
// samples above the mask. Endpoints are within step_s / 2 of the true
// crossing.
std::vector<DensePass> dense_passes(const ldit::TleRecord& tle, const ldit::GroundStation& station,
                                    double start_unix, double end_unix, double mask_deg, double step_s = 10.0);

// Hand-rolled generator for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    long long integer(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return uniform(0.0, 1.0) < p; }
    std::string ascii(std::size_t max_len);
    // A valid element set with fields spread across their legal ranges.
    ldit::TleRecord tle();
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

} // namespace oracle
