#pragma once

#include <ldit/vec3.hpp>

#include <cstdint>
#include <vector>

namespace ldit {

struct KMeansOptions {
    int restarts = 5;
    int max_iterations = 100;
    bool refine = true; // final global Lloyd pass over all k centers
};

// Within-cluster sum of squares after each Lloyd iteration of one 2-means run.
struct LloydTrace {
    std::vector<double> sse;
};

struct BisectionRecord {
    int split_cluster = 0;
    int new_cluster = 0;
    int best_restart = 0;
    std::vector<LloydTrace> restarts;
};

struct KMeansResult {
    std::vector<Vec3> centers;
    std::vector<int> assignments; // per input point
    std::vector<std::size_t> sizes;
    std::vector<BisectionRecord> bisections;
    std::vector<double> refinement_sse;
};

// Index of the nearest center; equal distances resolve to the lower index.
int nearest_center(const Vec3& p, const std::vector<Vec3>& centers) noexcept;

double sum_squared_error(const std::vector<Vec3>& points, const std::vector<int>& assignments,
                         const std::vector<Vec3>& centers);

// Divisive k-means: split the cluster with the largest within-cluster sum of
// squares using seeded 2-means restarts until k clusters exist, then refine
// globally so every point sits with its nearest center. The split keeps the
// original index for one half and appends the other. Deterministic for a
// fixed seed. Throws TooFewPoints when points < k or k < 1, InvalidInput on
// non-finite coordinates.
KMeansResult bisecting_kmeans(const std::vector<Vec3>& points, int k, std::uint64_t seed,
                              const KMeansOptions& options = {});

} // namespace ldit
