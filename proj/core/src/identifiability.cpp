#include <ldit/identifiability.hpp>

#include <ldit/error.hpp>

#include <algorithm>
#include <cmath>

namespace ldit {

double cluster_identifiability(std::size_t n) {
    if (n == 0) throw Error(ErrorKind::InvalidInput, "cluster size must be at least 1");
    return 1.0 / (std::sqrt(static_cast<double>(n)) + 1.0);
}

ClusterModel train_cluster_model(const std::vector<int>& norad_ids, const std::vector<Vec3>& momenta, int k,
                                 std::uint64_t seed) {
    if (norad_ids.size() != momenta.size()) {
        throw Error(ErrorKind::InvalidInput, "norad_ids and momenta differ in length");
    }
    const auto km = bisecting_kmeans(momenta, k, seed);
    ClusterModel model;
    model.k = k;
    model.seed = seed;
    model.centers = km.centers;
    model.sizes = km.sizes;
    for (std::size_t i = 0; i < norad_ids.size(); ++i) {
        if (!model.assignments.emplace(norad_ids[i], km.assignments[i]).second) {
            throw Error(ErrorKind::InvalidInput, "duplicate norad_id " + std::to_string(norad_ids[i]));
        }
    }
    return model;
}

std::vector<IdentifiabilityScore> score_identifiability(const ClusterModel& model) {
    if (model.sizes.empty()) throw Error(ErrorKind::DegenerateRange, "identifiability: empty model");
    const auto [lo, hi] = std::minmax_element(model.sizes.begin(), model.sizes.end());
    if (*lo == *hi) {
        throw Error(ErrorKind::DegenerateRange,
                    "identifiability: all " + std::to_string(model.sizes.size()) + " clusters have size " +
                        std::to_string(*lo));
    }
    // Extremes of C_I come from the smallest and largest clusters.
    const double c_max = cluster_identifiability(*lo);
    const double c_min = cluster_identifiability(*hi);
    std::vector<IdentifiabilityScore> out;
    out.reserve(model.assignments.size());
    for (const auto& [id, cluster] : model.assignments) {
        const auto n = model.sizes[cluster];
        const double c = cluster_identifiability(n);
        double s = (c - c_min) / (c_max - c_min);
        if (n == *lo) s = 1.0;
        if (n == *hi) s = 0.0;
        out.push_back({id, cluster, c, s});
    }
    return out;
}

Assignment assign_observation(const AngularMomentum& l, const ClusterModel& model) {
    if (model.centers.empty()) throw Error(ErrorKind::InvalidInput, "cluster model has no centers");
    const int c = nearest_center(l.l, model.centers);
    return {c, cluster_identifiability(model.sizes[c])};
}

nlohmann::json cluster_plot_json(const ClusterModel& model) {
    nlohmann::json clusters = nlohmann::json::array();
    std::map<std::size_t, std::size_t> histogram;
    for (std::size_t c = 0; c < model.centers.size(); ++c) {
        const auto& v = model.centers[c];
        const double m = norm(v);
        Vec3 u = m > 0.0 ? v * (1.0 / m) : Vec3{0.0, 0.0, 1.0};
        const bool flipped = u.z < 0.0;
        if (flipped) u = -u;
        clusters.push_back({{"cluster", c},
                            {"size", model.sizes[c]},
                            {"center_km2_s", {v.x, v.y, v.z}},
                            {"magnitude_km2_s", m},
                            {"direction", {u.x, u.y, u.z}},
                            {"retrograde_flipped", flipped}});
        ++histogram[model.sizes[c]];
    }
    nlohmann::json hist = nlohmann::json::array();
    for (const auto& [size, count] : histogram) hist.push_back({{"size", size}, {"clusters", count}});
    return {{"kind", "clusters"}, {"k", model.k}, {"seed", model.seed}, {"clusters", clusters}, {"size_histogram", hist}};
}

} // namespace ldit
