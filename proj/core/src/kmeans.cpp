#include <ldit/kmeans.hpp>

#include <ldit/error.hpp>

#include <limits>
#include <random>
#include <string>

namespace ldit {

namespace {

Vec3 centroid(const std::vector<Vec3>& points, const std::vector<std::size_t>& members) {
    Vec3 c;
    for (auto i : members) c += points[i];
    return c * (1.0 / static_cast<double>(members.size()));
}

double subset_sse(const std::vector<Vec3>& points, const std::vector<std::size_t>& members) {
    if (members.empty()) return 0.0;
    const Vec3 c = centroid(points, members);
    double s = 0.0;
    for (auto i : members) s += squared_distance(points[i], c);
    return s;
}

std::size_t farthest_from(const std::vector<Vec3>& points, const std::vector<std::size_t>& members, const Vec3& c) {
    std::size_t best = members.front();
    double best_d = -1.0;
    for (auto i : members) {
        const double d = squared_distance(points[i], c);
        if (d > best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

struct TwoMeans {
    std::vector<int> side; // 0 or 1 per member
    double sse = 0.0;
    LloydTrace trace;
};

// One Lloyd run of 2-means over `members`.
TwoMeans lloyd_two(const std::vector<Vec3>& points, const std::vector<std::size_t>& members, Vec3 c0, Vec3 c1,
                   int max_iterations) {
    const std::size_t n = members.size();
    TwoMeans r;
    r.side.assign(n, -1);
    std::vector<Vec3> centers{c0, c1};
    for (int it = 0; it < max_iterations; ++it) {
        bool changed = false;
        for (std::size_t j = 0; j < n; ++j) {
            const int s = nearest_center(points[members[j]], centers);
            if (s != r.side[j]) {
                r.side[j] = s;
                changed = true;
            }
        }
        std::vector<std::size_t> groups[2];
        for (std::size_t j = 0; j < n; ++j) groups[r.side[j]].push_back(members[j]);
        for (int g = 0; g < 2; ++g) {
            if (groups[g].empty()) {
                // Reseed the empty center on the point farthest from the other centroid.
                const auto& other = groups[1 - g];
                const auto far = farthest_from(points, other, centroid(points, other));
                for (std::size_t j = 0; j < n; ++j) {
                    if (members[j] == far) r.side[j] = g;
                }
                groups[0].clear();
                groups[1].clear();
                for (std::size_t j = 0; j < n; ++j) groups[r.side[j]].push_back(members[j]);
                changed = true;
                break;
            }
        }
        for (int g = 0; g < 2; ++g) centers[g] = centroid(points, groups[g]);
        double sse = 0.0;
        for (std::size_t j = 0; j < n; ++j) sse += squared_distance(points[members[j]], centers[r.side[j]]);
        r.trace.sse.push_back(sse);
        r.sse = sse;
        if (!changed) break;
    }
    return r;
}

} // namespace

int nearest_center(const Vec3& p, const std::vector<Vec3>& centers) noexcept {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centers.size(); ++c) {
        const double d = squared_distance(p, centers[c]);
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(c);
        }
    }
    return best;
}

double sum_squared_error(const std::vector<Vec3>& points, const std::vector<int>& assignments,
                         const std::vector<Vec3>& centers) {
    double s = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) s += squared_distance(points[i], centers[assignments[i]]);
    return s;
}

KMeansResult bisecting_kmeans(const std::vector<Vec3>& points, int k, std::uint64_t seed,
                              const KMeansOptions& options) {
    if (k < 1 || points.size() < static_cast<std::size_t>(k)) {
        throw Error(ErrorKind::TooFewPoints, "bisecting k-means needs at least k points (k=" + std::to_string(k) +
                                                 ", points=" + std::to_string(points.size()) + ")");
    }
    for (const auto& p : points) {
        if (!is_finite(p)) throw Error(ErrorKind::InvalidInput, "non-finite point passed to k-means");
    }

    std::mt19937_64 rng(seed);
    const std::size_t n = points.size();
    std::vector<std::vector<std::size_t>> clusters(1);
    for (std::size_t i = 0; i < n; ++i) clusters[0].push_back(i);
    std::vector<double> sse{subset_sse(points, clusters[0])};

    KMeansResult result;
    while (clusters.size() < static_cast<std::size_t>(k)) {
        // Largest SSE among splittable clusters; ties to the lower index.
        int target = -1;
        for (std::size_t c = 0; c < clusters.size(); ++c) {
            if (clusters[c].size() < 2) continue;
            if (target < 0 || sse[c] > sse[target] ||
                (sse[c] == sse[target] && sse[c] == 0.0 && clusters[c].size() > clusters[target].size())) {
                target = static_cast<int>(c);
            }
        }
        const auto members = clusters[target];
        BisectionRecord record;
        record.split_cluster = target;
        record.new_cluster = static_cast<int>(clusters.size());

        std::vector<int> side;
        if (sse[target] == 0.0) {
            // Identical points: peel one off.
            side.assign(members.size(), 0);
            side.back() = 1;
        } else {
            double best = std::numeric_limits<double>::infinity();
            for (int r = 0; r < options.restarts; ++r) {
                const std::size_t m = members.size();
                const std::size_t a = rng() % m;
                std::size_t b = rng() % (m - 1);
                if (b >= a) ++b;
                auto run = lloyd_two(points, members, points[members[a]], points[members[b]], options.max_iterations);
                if (run.sse < best) {
                    best = run.sse;
                    side = run.side;
                    record.best_restart = r;
                }
                record.restarts.push_back(std::move(run.trace));
            }
        }

        std::vector<std::size_t> keep, moved;
        for (std::size_t j = 0; j < members.size(); ++j) (side[j] == 0 ? keep : moved).push_back(members[j]);
        clusters[target] = std::move(keep);
        clusters.push_back(std::move(moved));
        sse[target] = subset_sse(points, clusters[target]);
        sse.push_back(subset_sse(points, clusters.back()));
        result.bisections.push_back(std::move(record));
    }

    const std::size_t kk = clusters.size();
    result.assignments.assign(n, 0);
    for (std::size_t c = 0; c < kk; ++c) {
        for (auto i : clusters[c]) result.assignments[i] = static_cast<int>(c);
    }
    result.centers.resize(kk);
    for (std::size_t c = 0; c < kk; ++c) result.centers[c] = centroid(points, clusters[c]);

    if (options.refine) {
        for (int it = 0; it < options.max_iterations; ++it) {
            bool changed = false;
            std::vector<std::size_t> sizes(kk, 0);
            for (std::size_t i = 0; i < n; ++i) {
                const int c = nearest_center(points[i], result.centers);
                if (c != result.assignments[i]) {
                    result.assignments[i] = c;
                    changed = true;
                }
                ++sizes[c];
            }
            for (std::size_t c = 0; c < kk; ++c) {
                if (sizes[c] != 0) continue;
                // Move the worst-fitting point of a multi-member cluster here.
                std::size_t worst = n;
                double worst_d = -1.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (sizes[result.assignments[i]] < 2) continue;
                    const double d = squared_distance(points[i], result.centers[result.assignments[i]]);
                    if (d > worst_d) {
                        worst_d = d;
                        worst = i;
                    }
                }
                --sizes[result.assignments[worst]];
                result.assignments[worst] = static_cast<int>(c);
                ++sizes[c];
                changed = true;
            }
            std::vector<Vec3> sums(kk);
            for (std::size_t i = 0; i < n; ++i) sums[result.assignments[i]] += points[i];
            for (std::size_t c = 0; c < kk; ++c) result.centers[c] = sums[c] * (1.0 / static_cast<double>(sizes[c]));
            result.refinement_sse.push_back(sum_squared_error(points, result.assignments, result.centers));
            if (!changed) break;
        }
    }

    result.sizes.assign(kk, 0);
    for (auto a : result.assignments) ++result.sizes[a];
    return result;
}

} // namespace ldit
