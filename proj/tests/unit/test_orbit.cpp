#include "../support/oracles.hpp"

#include <ldit/csv.hpp>
#include <ldit/error.hpp>
#include <ldit/orbit.hpp>
#include <ldit/sgp4.hpp>
#include <ldit/tle.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <map>
#include <numbers>
#include <sstream>

namespace {

const std::filesystem::path kFixtures(LDIT_FIXTURE_DIR);

const char* kIssLine1 = "1 25544U 98067A   24061.50000000  .00016717  00000-0  30270-3 0  9991";
const char* kIssLine2 = "2 25544  51.6416 247.4627 0006703 130.5360 325.0288 15.50377579 10008";

ldit::TleRecord iss() {
    std::string l1 = kIssLine1, l2 = kIssLine2;
    l1[68] = static_cast<char>('0' + oracle::checksum(l1));
    l2[68] = static_cast<char>('0' + oracle::checksum(l2));
    return ldit::parse_tle_lines(l1, l2, "ISS");
}

} // namespace

TEST(Sgp4, ReproducesVerificationVectors) {
    const auto parsed = ldit::parse_tle(ldit::csv::read_file(kFixtures / "sgp4" / "verification.tle"));
    ASSERT_TRUE(parsed.diagnostics.empty());
    std::map<int, ldit::Sgp4> models;
    for (const auto& t : parsed.records) models.emplace(t.norad_id, ldit::Sgp4(t));

    std::istringstream in(ldit::csv::read_file(kFixtures / "sgp4" / "verification.csv"));
    std::string line;
    std::getline(in, line);
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        double v[8];
        std::istringstream ls(line);
        for (double& x : v) {
            std::string cell;
            std::getline(ls, cell, ',');
            x = std::stod(cell);
        }
        const auto& model = models.at(static_cast<int>(v[0]));
        const auto r = model.propagate(v[1]);
        ASSERT_EQ(r.error, 0) << line;
        EXPECT_LT(ldit::norm(r.position - ldit::Vec3{v[2], v[3], v[4]}), 1e-3) << line;
        EXPECT_LT(ldit::norm(r.velocity - ldit::Vec3{v[5], v[6], v[7]}), 1e-6) << line;
        ++rows;
    }
    EXPECT_GT(rows, 500u);
}


TEST(Orbit, DeterministicState) {
    const auto tle = iss();
    const auto t = tle.epoch.plus_seconds(3600.0);
    const auto a = ldit::propagate(tle, t);
    const auto b = ldit::propagate(tle, t);
    EXPECT_EQ(a.position, b.position);
    EXPECT_EQ(a.velocity, b.velocity);
}

TEST(Orbit, EpochGuard) {
    const ldit::Propagator p(iss());
    EXPECT_NO_THROW(p.state_at(p.tle().epoch.plus_seconds(29.0 * 86400.0)));
    try {
        p.state_at(p.tle().epoch.plus_seconds(31.0 * 86400.0));
        FAIL();
    } catch (const ldit::Error& e) {
        EXPECT_EQ(e.kind(), ldit::ErrorKind::EpochTooFar);
    }
}

TEST(Orbit, MomentumMassHandling) {
    const auto s = ldit::propagate(iss(), iss().epoch);
    const auto unit = ldit::angular_momentum(s);
    EXPECT_TRUE(unit.mass_assumed);
    const auto heavy = ldit::angular_momentum(s, 420000.0);
    EXPECT_FALSE(heavy.mass_assumed);
    EXPECT_NEAR(ldit::norm(heavy.l), 420000.0 * ldit::norm(unit.l), 1e-6 * ldit::norm(heavy.l));
    // |l| = m r v sin(angle) <= m r v
    EXPECT_LE(ldit::norm(unit.l), ldit::norm(s.position) * ldit::norm(s.velocity));
}

TEST(Orbit, StateMomentumAgreesWithElements) {
    const auto tle = iss();
    const auto from_state = ldit::angular_momentum(ldit::propagate(tle, tle.epoch)).l;
    const auto from_elements = ldit::momentum_from_elements(tle).l;
    EXPECT_NEAR(ldit::norm(from_state) / ldit::norm(from_elements), 1.0, 0.01);
    const double cosang = ldit::dot(from_state, from_elements) / (ldit::norm(from_state) * ldit::norm(from_elements));
    EXPECT_GT(cosang, std::cos(0.5 * std::numbers::pi / 180.0));
}

TEST(Orbit, TwoBodyOracleConservesMomentum) {
    const oracle::KeplerElements el{12000.0, 0.3, 0.9, 1.1, 0.4, 0.0};
    double lo = 1e300, hi = 0;
    for (int k = 0; k < 100; ++k) {
        auto e = el;
        e.mean_anomaly = 2.0 * std::numbers::pi * k / 100.0;
        const auto s = oracle::kepler_state(e, ldit::kMuEarth);
        const double l = ldit::norm(ldit::angular_momentum({{}, s.r, s.v}).l);
        lo = std::min(lo, l);
        hi = std::max(hi, l);
    }
    EXPECT_LT((hi - lo) / lo, 1e-9);
    EXPECT_NEAR(hi, std::sqrt(ldit::kMuEarth * el.a * (1 - el.e * el.e)), 1e-6 * hi);
}

TEST(Orbit, PeriodAndSemiMajorAxis) {
    EXPECT_NEAR(ldit::orbital_period_minutes(1.00273791), 1436.068, 1e-3);
    EXPECT_NEAR(ldit::semi_major_axis_km(1.00273791), 42164.17, 0.5);
}

TEST(Orbit, GeodeticAndElevation) {
    const auto p = ldit::geodetic_to_ecef(0.0, 0.0, 0.0);
    EXPECT_NEAR(p.x, ldit::kEarthRadiusKm, 1e-9);
    const auto pole = ldit::geodetic_to_ecef(90.0, 0.0, 0.0);
    EXPECT_NEAR(pole.z, 6356.752314, 1e-5);
    const ldit::TopocentricFrame f(0.0, 0.0, 0.0);
    EXPECT_NEAR(f.elevation_deg({ldit::kEarthRadiusKm + 1000.0, 0.0, 0.0}), 90.0, 1e-9);
    EXPECT_NEAR(f.elevation_deg({ldit::kEarthRadiusKm, 1000.0, 0.0}), 0.0, 1e-9);
}

TEST(Orbit, TemeToEcefMatchesOracleGeometry) {
    const auto tle = iss();
    const auto t = tle.epoch.plus_seconds(1234.0);
    const auto s = ldit::propagate(tle, t);
    ldit::GroundStation st{"X", 40.0, -105.0, 1600.0, 10.0};
    const ldit::TopocentricFrame f(st.latitude_deg, st.longitude_deg, st.altitude_m);
    EXPECT_NEAR(f.elevation_deg(ldit::teme_to_ecef(s.position, t)),
                oracle::elevation_deg(s.position, t.julian_date(), st), 1e-9);
}

TEST(Sgp4, ResonanceCacheDoesNotChangeResults) {
    std::string l1 = "1 15000U 84000A   24060.00000000  .00000000  00000-0  00000-0 0  9990";
    std::string l2 = "2 15000  63.4000  90.0000 7100000 270.0000  10.0000  2.00570000 10002";
    l1[68] = static_cast<char>('0' + oracle::checksum(l1));
    l2[68] = static_cast<char>('0' + oracle::checksum(l2));
    const ldit::Sgp4 model(ldit::parse_tle_lines(l1, l2));
    ASSERT_TRUE(model.deep_space());
    ldit::ResonanceCache cache;
    for (double t = 0; t <= 3.0 * 1440.0; t += 97.0) {
        const auto with = model.propagate(t, &cache);
        const auto without = model.propagate(t);
        EXPECT_EQ(with.position, without.position) << t;
    }
}
