#include <ldit/detectability.hpp>

#include <ldit/error.hpp>

#include <algorithm>
#include <cmath>

namespace ldit {

std::vector<double> min_max_normalize(const std::vector<double>& values) {
    if (values.size() < 2) {
        throw Error(ErrorKind::DegenerateRange, "min-max normalization needs at least 2 values");
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double min = *lo;
    const double range = *hi - min;
    if (!(range > 0.0) || !std::isfinite(range)) {
        throw Error(ErrorKind::DegenerateRange, "all values are equal");
    }
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) {
        // Pin the extremes so rounding cannot move them off 0 and 1.
        if (v == min) {
            out.push_back(0.0);
        } else if (v == *hi) {
            out.push_back(1.0);
        } else {
            out.push_back((v - min) / range);
        }
    }
    return out;
}

std::vector<DetectabilityScore> score_detectability(const std::vector<CatalogEntry>& catalog) {
    std::vector<int> ids;
    std::vector<double> rcs;
    for (const auto& e : catalog) {
        if (!e.rcs_dbsm) continue;
        ids.push_back(e.norad_id);
        rcs.push_back(*e.rcs_dbsm);
    }
    std::vector<double> s;
    try {
        s = min_max_normalize(rcs);
    } catch (const Error& e) {
        throw Error(ErrorKind::DegenerateRange, std::string("detectability: ") + e.what() + " (" +
                                                    std::to_string(rcs.size()) + " objects with RCS)");
    }
    std::vector<DetectabilityScore> out(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) out[i] = {ids[i], s[i]};
    return out;
}

nlohmann::json score_histogram_json(const std::vector<double>& scores, int bins, const std::string& label) {
    bins = std::max(bins, 1);
    std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
    for (double s : scores) {
        auto b = static_cast<long>(std::floor(s * bins));
        b = std::clamp<long>(b, 0, bins - 1);
        ++counts[static_cast<std::size_t>(b)];
    }
    std::vector<double> edges;
    for (int i = 0; i <= bins; ++i) edges.push_back(static_cast<double>(i) / bins);
    return {{"kind", "histogram"}, {"label", label}, {"n", scores.size()}, {"bin_edges", edges}, {"counts", counts}};
}

} // namespace ldit
