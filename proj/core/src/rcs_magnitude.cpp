#include <ldit/rcs_magnitude.hpp>

#include <ldit/error.hpp>

#include <algorithm>
#include <cmath>
#include <map>

namespace ldit {

CorrelationReport correlate_rcs_magnitude(const std::vector<CatalogEntry>& catalog,
                                          const std::vector<MagnitudeObservation>& mags) {
    std::map<int, std::pair<double, int>> mag_sum;
    for (const auto& m : mags) {
        if (!std::isfinite(m.std_magnitude)) continue;
        auto& s = mag_sum[m.norad_id];
        s.first += m.std_magnitude;
        ++s.second;
    }
    std::map<int, double> rcs;
    for (const auto& e : catalog) {
        if (e.rcs_dbsm && std::isfinite(*e.rcs_dbsm)) rcs[e.norad_id] = *e.rcs_dbsm;
    }

    CorrelationReport r;
    for (const auto& [id, x] : rcs) {
        const auto it = mag_sum.find(id);
        if (it == mag_sum.end()) continue;
        r.norad_ids.push_back(id);
        r.rcs_dbsm.push_back(x);
        r.std_magnitude.push_back(it->second.first / it->second.second);
    }
    r.n = r.norad_ids.size();
    if (r.n < 3) {
        throw Error(ErrorKind::InsufficientOverlap,
                    "need at least 3 objects with both RCS and magnitude, found " + std::to_string(r.n));
    }

    const double n = static_cast<double>(r.n);
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < r.n; ++i) {
        mx += r.rcs_dbsm[i];
        my += r.std_magnitude[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < r.n; ++i) {
        const double dx = r.rcs_dbsm[i] - mx;
        const double dy = r.std_magnitude[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw Error(ErrorKind::DegenerateVariance, sxx == 0.0 ? "all RCS values are equal" : "all magnitudes are equal");
    }
    r.pearson_r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    return r;
}

nlohmann::json correlation_plot_json(const CorrelationReport& report) {
    nlohmann::json points = nlohmann::json::array();
    for (std::size_t i = 0; i < report.n; ++i) {
        points.push_back({{"norad_id", report.norad_ids[i]}, {"rcs_dbsm", report.rcs_dbsm[i]},
                          {"std_mag", report.std_magnitude[i]}});
    }
    const auto [lo, hi] = std::minmax_element(report.rcs_dbsm.begin(), report.rcs_dbsm.end());
    return {
        {"kind", "rcs_magnitude"},
        {"x_label", "RCS (dBsm)"},
        {"y_label", "standard magnitude"},
        {"n", report.n},
        {"pearson_r", report.pearson_r},
        {"fit", {{"slope", report.slope}, {"intercept", report.intercept},
                 {"x", {*lo, *hi}}, {"y", {report.slope * *lo + report.intercept, report.slope * *hi + report.intercept}}}},
        {"points", points},
    };
}

} // namespace ldit
