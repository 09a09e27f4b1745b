#pragma once

#include "sigvote/partition_metrics.hpp"

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <vector>

namespace sigvote {

/// A partition of the pattern set into k clusters.
///
/// Patterns are referred to by their position in the dissimilarity matrix.
/// Cluster ids run 0..k-1 and are canonical: ordered by size descending, then
/// by smallest member position ascending.
struct Clustering {
    std::size_t k = 0;
    std::vector<std::size_t> assignment;  // pattern -> cluster id
    std::vector<std::size_t> medoids;     // cluster id -> pattern position
    double cost = 0.0;                    // sum of dissimilarities to the assigned medoid

    std::vector<std::size_t> sizes() const;
    std::vector<std::size_t> members(std::size_t cluster) const;

    bool operator==(const Clustering&) const = default;
};

struct KMedoidsOptions {
    std::uint64_t seed = 0;
    /// Restart 0 starts from the greedy BUILD medoids; the others from
    /// seeded random medoids. The lowest-cost result wins, earliest on ties.
    std::size_t restarts = 20;
};

/// PAM: BUILD initialisation followed by best-improvement SWAP to a local
/// minimum of the total cost. Assignment ties go to the medoid with the lower
/// pattern position. Throws std::invalid_argument unless 1 <= k <= D.size().
Clustering k_medoids(const DissimilarityMatrix& d, std::size_t k, const KMedoidsOptions& options = {});

/// Mean silhouette width. Singleton clusters contribute 0, as does any point
/// with a(i) = b(i) = 0. Throws std::invalid_argument when k < 2.
double silhouette(const DissimilarityMatrix& d, const Clustering& clustering);

struct SweepEntry {
    Clustering clustering;
    double silhouette = 0.0;
};

/// Movement of patterns between the clusterings at k and k + 1.
struct Transition {
    std::size_t k = 0;
    /// flows[a][b]: number of patterns in cluster a at k and cluster b at k + 1.
    std::vector<std::vector<std::size_t>> flows;
    /// Share of clusters at k + 1 whose members all come from one cluster at
    /// k. 1 means the step is a pure split (strictly hierarchical).
    double nesting = 0.0;
};

struct SweepReport {
    std::vector<std::string> pattern_ids;
    std::size_t k_min = 0;
    std::vector<SweepEntry> entries;  // entries[i] is k = k_min + i
    std::vector<Transition> transitions;

    const SweepEntry& at_k(std::size_t k) const;
    /// k with the highest silhouette (smallest k among exact ties).
    std::size_t best_k() const;
};

/// Runs k_medoids and silhouette for every k in [k_min, k_max]. Each k is
/// seeded independently from `options.seed`, so entries do not depend on the
/// sweep range. Throws std::invalid_argument unless 2 <= k_min <= k_max <= D.size().
SweepReport sweep_k(const DissimilarityMatrix& d, std::size_t k_min, std::size_t k_max,
                    const KMedoidsOptions& options = {}, unsigned jobs = 1);

/// `rollcall_id,k,cluster_id` rows for every k of the sweep (alluvial input).
void write_alluvial_csv(std::ostream& out, const SweepReport& report);
/// `k,silhouette,cost,sizes` rows (sizes `;`-separated).
void write_sweep_csv(std::ostream& out, const SweepReport& report);

}  // namespace sigvote
