#include "../support/oracles.hpp"

#include <ldit/catalog.hpp>
#include <ldit/error.hpp>
#include <ldit/rcs_magnitude.hpp>

#include <gtest/gtest.h>

namespace {

std::vector<ldit::CatalogEntry> entries(const std::vector<std::optional<double>>& rcs) {
    std::vector<ldit::CatalogEntry> out;
    for (std::size_t i = 0; i < rcs.size(); ++i) {
        ldit::CatalogEntry e;
        e.norad_id = static_cast<int>(i + 1);
        e.rcs_dbsm = rcs[i];
        e.rcs_missing = !rcs[i];
        out.push_back(e);
    }
    return out;
}

ldit::ErrorKind kind_of(const std::vector<ldit::CatalogEntry>& c, const std::vector<ldit::MagnitudeObservation>& m) {
    try {
        ldit::correlate_rcs_magnitude(c, m);
    } catch (const ldit::Error& e) {
        return e.kind();
    }
    return ldit::ErrorKind::InvalidInput;
}

} // namespace

TEST(RcsMagnitude, MatchesPearsonOracleAndFitsLine) {
    oracle::Gen g(11);
    std::vector<std::optional<double>> rcs;
    std::vector<ldit::MagnitudeObservation> mags;
    std::vector<double> x, y;
    for (int i = 0; i < 200; ++i) {
        const double r = g.uniform(-20, 20);
        const double m = 6.0 - 0.4 * r + g.uniform(-1, 1);
        rcs.push_back(r);
        if (i % 3 != 0) {
            mags.push_back({i + 1, m});
            x.push_back(r);
            y.push_back(m);
        }
    }
    const auto rep = ldit::correlate_rcs_magnitude(entries(rcs), mags);
    EXPECT_EQ(rep.n, x.size());
    EXPECT_NEAR(rep.pearson_r, oracle::pearson(x, y), 1e-12);
    EXPECT_NEAR(rep.slope, -0.4, 0.02);
    EXPECT_NEAR(rep.intercept, 6.0, 0.2);
    const auto plot = ldit::correlation_plot_json(rep);
    EXPECT_EQ(plot["points"].size(), x.size());
}

TEST(RcsMagnitude, PerfectLine) {
    const auto rep = ldit::correlate_rcs_magnitude(entries({1.0, 2.0, 3.0}), {{1, 10.0}, {2, 8.0}, {3, 6.0}});
    EXPECT_NEAR(rep.pearson_r, -1.0, 1e-12);
    EXPECT_NEAR(rep.slope, -2.0, 1e-12);
    EXPECT_NEAR(rep.intercept, 12.0, 1e-12);
}

TEST(RcsMagnitude, Errors) {
    EXPECT_EQ(kind_of(entries({1.0, 2.0, std::nullopt}), {{1, 1.0}, {2, 2.0}, {3, 3.0}}),
              ldit::ErrorKind::InsufficientOverlap);
    EXPECT_EQ(kind_of(entries({1.0, 1.0, 1.0}), {{1, 1.0}, {2, 2.0}, {3, 3.0}}), ldit::ErrorKind::DegenerateVariance);
    EXPECT_EQ(kind_of(entries({1.0, 2.0, 3.0}), {{1, 5.0}, {2, 5.0}, {3, 5.0}}), ldit::ErrorKind::DegenerateVariance);
}
