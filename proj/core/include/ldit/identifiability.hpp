#pragma once

#include <ldit/kmeans.hpp>
#include <ldit/orbit.hpp>

#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <vector>

namespace ldit {

inline constexpr int kDefaultClusterCount = 60;
inline constexpr std::uint64_t kDefaultSeed = 42;

struct ClusterModel {
    int k = 0;
    std::vector<Vec3> centers;          // km^2/s
    std::map<int, int> assignments;     // norad_id -> cluster index
    std::vector<std::size_t> sizes;
    std::uint64_t seed = kDefaultSeed;
};

struct IdentifiabilityScore {
    int norad_id = 0;
    int cluster = 0;
    double c_i = 0.0;
    double s_i = 0.0;
};

// 1 / (sqrt(n) + 1); n >= 1.
double cluster_identifiability(std::size_t n);

// Clusters one momentum vector per object. ids and vectors are parallel.
ClusterModel train_cluster_model(const std::vector<int>& norad_ids, const std::vector<Vec3>& momenta, int k,
                                 std::uint64_t seed);

// Ordered by norad_id. Throws DegenerateRange when every cluster has the same size.
std::vector<IdentifiabilityScore> score_identifiability(const ClusterModel& model);

struct Assignment {
    int cluster = 0;
    double c_i = 0.0;
};

Assignment assign_observation(const AngularMomentum& l, const ClusterModel& model);

// Per-cluster unit direction of the center (flipped into the upper hemisphere,
// flag kept) plus the size histogram.
nlohmann::json cluster_plot_json(const ClusterModel& model);

} // namespace ldit
