#pragma once

#include "sigvote/cc_solver.hpp"
#include "sigvote/partition_metrics.hpp"
#include "sigvote/vote_matrix.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace sigvote {

/// Signed consensus of a cluster of patterns.
///
/// For voters u, v the support is the number of patterns containing both, and
/// w(u,v) = (together - apart) / support. Pairs never seen together carry no
/// edge, and neither do exact ties (together == apart).
struct ConsensusGraph {
    WeightedSignedGraph graph;
    std::vector<std::size_t> support;   // n x n, row-major in graph node order
    std::vector<std::size_t> presence;  // per node: patterns containing it
    std::size_t n_patterns = 0;

    std::size_t support_of(std::size_t u, std::size_t v) const { return support[u * graph.size() + v]; }
};

/// Throws std::invalid_argument for an empty cluster. Nodes follow
/// `node_order` (ids not appearing in any pattern are skipped); when it is
/// empty, nodes are sorted by id.
ConsensusGraph consensus_graph(const std::vector<Pattern>& patterns, const std::vector<std::string>& node_order = {});

struct FilteredConsensus {
    ConsensusGraph consensus;
    std::vector<std::string> excluded;  // in original node order
};

/// Drops voters present in fewer than threshold * |patterns| patterns.
/// Throws std::invalid_argument unless 0 < threshold <= 1, and
/// std::runtime_error("empty consensus graph") if nobody is left.
FilteredConsensus filter_low_participation(const ConsensusGraph& consensus, const std::vector<Pattern>& patterns,
                                           double threshold = 0.5);

struct FactionSummary {
    std::size_t size = 0;
    std::map<std::string, std::size_t> groups;  // political group -> members
    /// Members abstaining in more than `abstain_rate` of the cluster's roll-calls.
    std::size_t abstainers = 0;
    bool abstentionist = false;
};

struct CharacteristicPattern {
    std::size_t cluster_id = 0;
    std::vector<std::string> rollcall_ids;
    Partition partition;                // over retained voters
    std::vector<std::string> excluded;  // filtered for low participation
    double cost = 0.0;
    bool optimal = false;
    /// The exact search hit its limits and the heuristic result was compared in.
    bool heuristic_fallback = false;
    std::uint64_t nodes_explored = 0;
    std::vector<FactionSummary> factions;  // parallel to partition.blocks(); filled by summarize_pattern
    ConsensusGraph consensus;              // filtered graph the partition was solved on
};

struct CharacteristicOptions {
    SolveLimits limits;
    double participation_threshold = 0.5;
    std::vector<std::string> node_order;
};

/// Consensus graph, participation filter, then Correlation Clustering (exact,
/// with heuristic fallback flagged when the limits are hit).
CharacteristicPattern characteristic_pattern(std::size_t cluster_id, const std::vector<Pattern>& cluster_patterns,
                                             const CharacteristicOptions& options = {});

struct AbstentionThresholds {
    double abstain_rate = 0.5;   // a member "abstains" above this share of roll-calls
    double member_share = 0.5;   // a faction is abstentionist above this share of such members
};

/// Per-faction political-group histogram and abstentionist flag, computed from
/// the cluster's roll-calls in `matrix`. Voters missing from the matrix are
/// counted under group "".
std::vector<FactionSummary> summarize_pattern(const CharacteristicPattern& cp, const VoteMatrix& matrix,
                                              const AbstentionThresholds& thresholds = {});

}  // namespace sigvote
