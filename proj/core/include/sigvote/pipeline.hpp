#pragma once

#include "sigvote/cc_solver.hpp"
#include "sigvote/characteristic.hpp"
#include "sigvote/multiplex.hpp"
#include "sigvote/partition_metrics.hpp"
#include "sigvote/pattern_clustering.hpp"
#include "sigvote/vote_matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sigvote {

struct RunConfig {
    std::string votes_path;
    std::string voters_path;
    std::string docs_path;
    MatrixFilter filter;
    AbstentionPolicy abstention = AbstentionPolicy::Keep;
    Measure measure = Measure::Purity;
    std::optional<std::size_t> k;  // nullopt = argmax silhouette
    std::size_t k_min = 2;
    std::optional<std::size_t> k_max;  // nullopt = number of patterns
    std::optional<std::uint64_t> seed;  // required by run_pipeline
    SolveLimits limits;
    std::size_t restarts = 20;
    double participation_threshold = 0.5;
    AbstentionThresholds abstention_thresholds;
    /// Sweep entries whose silhouette is within this of the best are reported as near-ties.
    double near_tie = 0.02;
    unsigned jobs = 1;
    std::string out_dir = "out";
};

/// Reads an INI-style file (`key = value` under `[section]` headers; see the
/// README for the keys). Relative input paths are resolved against the file's
/// directory. Throws std::invalid_argument on unknown keys or bad values.
RunConfig load_config(const std::string& path);
/// Throws std::invalid_argument describing the first invalid field.
void validate(const RunConfig& config, bool require_inputs = true);

struct LayerResult {
    std::string rollcall_id;
    std::size_t participants = 0;
    bool degenerate = false;
    std::optional<CCSolution> solution;  // absent for degenerate layers
};

struct ClusterSummary {
    std::size_t id = 0;  // 1-based
    std::size_t size = 0;
    double proportion = 0.0;
    std::string medoid;
    std::vector<std::string> rollcall_ids;
};

struct Timings {
    std::map<std::string, double> seconds;  // stage -> wall time
};

struct RunReport {
    std::vector<LayerResult> layers;
    std::vector<Pattern> patterns;  // non-degenerate layers, matrix order
    std::optional<DissimilarityMatrix> distances;
    std::optional<SweepReport> sweep;
    std::size_t chosen_k = 0;
    std::string k_source;                 // "auto", "user" or "single-pattern"
    std::vector<std::size_t> near_ties;   // k values within near_tie of the best silhouette
    Clustering clustering;
    std::vector<ClusterSummary> clusters;
    std::vector<CharacteristicPattern> characteristic;
    std::vector<std::string> warnings;
    Timings timings;  // not part of report.json
};

// Individual stages; run_pipeline chains them.

struct IngestStage {
    VoteMatrix matrix;
    std::vector<std::string> warnings;
};
IngestStage ingest(const RunConfig& config);
std::vector<LayerResult> solve_layers(const MultiplexGraph& multiplex, const SolveLimits& limits, unsigned jobs);
std::vector<Pattern> patterns_from_layers(const std::vector<LayerResult>& layers);

struct ClusterStage {
    std::optional<SweepReport> sweep;
    std::size_t chosen_k = 0;
    std::string k_source;
    std::vector<std::size_t> near_ties;
    Clustering clustering;
    std::vector<std::string> warnings;
};
/// Silhouette sweep over [k_min, k_max] and the clustering at the chosen k
/// (config.k when set, otherwise the silhouette argmax).
ClusterStage cluster_patterns(const RunConfig& config, const DissimilarityMatrix& d, Timings& timings);

/// One characteristic pattern per cluster, with faction summaries.
std::vector<CharacteristicPattern> characterize_clusters(const RunConfig& config, const VoteMatrix& matrix,
                                                         const std::vector<Pattern>& patterns,
                                                         const Clustering& clustering);

/// Stages after per-layer solving. `matrix` supplies voter order and group
/// metadata for the characteristic patterns.
RunReport run_from_patterns(const RunConfig& config, const VoteMatrix& matrix, std::vector<LayerResult> layers);

/// ingest -> extract -> per-layer CC -> dissimilarity -> sweep/cluster ->
/// characteristic patterns. Stage failures are rethrown as StageError.
RunReport run_pipeline(const RunConfig& config);

struct MeasureScore {
    Measure measure = Measure::Purity;
    std::size_t best_k = 0;
    double best_silhouette = 0.0;
    std::vector<double> silhouettes;  // per k from k_min
};

/// Silhouette sweep under each of the four measures on the same patterns.
std::vector<MeasureScore> compare_measures(const RunConfig& config);
std::vector<MeasureScore> compare_measures(const RunConfig& config, const std::vector<Pattern>& patterns);

}  // namespace sigvote
