#pragma once

#include "sigvote/partition.hpp"
#include "sigvote/signed_graph.hpp"

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace sigvote {

/// Correlation Clustering: find the partition of a signed graph's nodes that
/// minimises the imbalance (total |w| of positive pairs split across blocks
/// plus negative pairs kept inside a block). The number of blocks is free.

struct SolveLimits {
    /// Wall-clock budget for one solve; nullopt = unlimited.
    std::optional<std::chrono::duration<double>> time_limit = std::chrono::seconds(60);
    /// Maximum number of search nodes; nullopt = unlimited.
    std::optional<std::uint64_t> node_limit;
};

struct CCSolution {
    Partition partition;
    double cost = 0.0;
    /// True only when the search proved `cost` is the global minimum.
    bool optimal = false;
    std::uint64_t nodes_explored = 0;

    bool operator==(const CCSolution&) const = default;
};

inline constexpr std::size_t kBruteForceMaxNodes = 12;

/// Costs closer than this are treated as equal; ties go to the
/// lexicographically smallest restricted-growth string over node order.
inline constexpr double kCostTieTolerance = 1e-9;

/// Throws std::invalid_argument when the partition does not cover exactly the
/// graph's node set.
double imbalance(const WeightedSignedGraph& graph, const Partition& partition);

/// Same quantity for a block label per node (graph node order). All solvers
/// report costs through this function so equal partitions give equal costs.
double imbalance(const WeightedSignedGraph& graph, std::span<const int> labels);

/// Branch-and-bound over restricted-growth label strings. Returns the
/// certified optimum (optimal = true) unless a limit is hit, in which case the
/// best partition found so far is returned with optimal = false. Among
/// optimal partitions the one whose restricted-growth string (in node order)
/// is lexicographically smallest is returned.
/// Throws std::invalid_argument for an empty graph.
CCSolution solve_exact(const WeightedSignedGraph& graph, const SolveLimits& limits = {});

/// Greedy insertion in node order, then single-node moves (visited in a
/// seed-dependent order) until no move improves. Never claims optimality.
CCSolution solve_heuristic(const WeightedSignedGraph& graph, std::uint64_t seed);

/// Exhaustive enumeration of every set partition (test oracle). Same tie rule
/// as solve_exact. Throws std::invalid_argument when size() > kBruteForceMaxNodes.
CCSolution brute_force(const WeightedSignedGraph& graph);

/// Relabels so the first node gets 0 and each new block the next free label.
std::vector<int> to_restricted_growth(std::span<const int> labels);

}  // namespace sigvote
