#include "sigvote/characteristic.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace sigvote {

ConsensusGraph consensus_graph(const std::vector<Pattern>& patterns, const std::vector<std::string>& node_order) {
    if (patterns.empty()) throw std::invalid_argument("empty cluster");

    std::unordered_set<std::string> seen;
    for (const auto& p : patterns) {
        for (const auto& block : p.partition.blocks()) seen.insert(block.begin(), block.end());
    }
    std::vector<std::string> nodes;
    if (node_order.empty()) {
        nodes.assign(seen.begin(), seen.end());
        std::sort(nodes.begin(), nodes.end());
    } else {
        for (const auto& id : node_order) {
            if (seen.contains(id)) nodes.push_back(id);
        }
        if (nodes.size() != seen.size()) throw std::invalid_argument("node_order misses pattern members");
    }
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < nodes.size(); ++i) index.emplace(nodes[i], i);

    const auto n = nodes.size();
    ConsensusGraph cg;
    cg.n_patterns = patterns.size();
    cg.support.assign(n * n, 0);
    cg.presence.assign(n, 0);
    std::vector<long> together_minus_apart(n * n, 0);
    std::vector<int> label(n);
    std::vector<std::size_t> present;
    for (const auto& p : patterns) {
        present.clear();
        for (std::size_t b = 0; b < p.partition.n_blocks(); ++b) {
            for (const auto& id : p.partition.blocks()[b]) {
                const auto i = index.at(id);
                label[i] = static_cast<int>(b);
                present.push_back(i);
                ++cg.presence[i];
            }
        }
        for (std::size_t a = 0; a < present.size(); ++a) {
            for (std::size_t c = a + 1; c < present.size(); ++c) {
                const auto u = std::min(present[a], present[c]);
                const auto v = std::max(present[a], present[c]);
                ++cg.support[u * n + v];
                together_minus_apart[u * n + v] += label[u] == label[v] ? 1 : -1;
            }
        }
    }
    cg.graph = WeightedSignedGraph(nodes);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            cg.support[v * n + u] = cg.support[u * n + v];
            if (cg.support[u * n + v] == 0) continue;
            cg.graph.set_weight(u, v,
                                static_cast<double>(together_minus_apart[u * n + v]) /
                                    static_cast<double>(cg.support[u * n + v]));
        }
    }
    return cg;
}

FilteredConsensus filter_low_participation(const ConsensusGraph& consensus, const std::vector<Pattern>& patterns,
                                           double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0)) throw std::invalid_argument("threshold must be in (0, 1]");
    const auto& nodes = consensus.graph.nodes();
    std::unordered_map<std::string, std::size_t> presence;
    for (const auto& p : patterns) {
        for (const auto& block : p.partition.blocks()) {
            for (const auto& id : block) ++presence[id];
        }
    }
    const double needed = threshold * static_cast<double>(patterns.size());
    FilteredConsensus out;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto it = presence.find(nodes[i]);
        const auto count = it == presence.end() ? 0 : it->second;
        if (static_cast<double>(count) < needed) {
            out.excluded.push_back(nodes[i]);
        } else {
            keep.push_back(i);
        }
    }
    if (keep.empty()) throw std::runtime_error("empty consensus graph");

    auto& cg = out.consensus;
    cg.graph = consensus.graph.induced(keep);
    cg.n_patterns = consensus.n_patterns;
    const auto m = keep.size();
    const auto n = nodes.size();
    cg.support.assign(m * m, 0);
    cg.presence.resize(m);
    for (std::size_t a = 0; a < m; ++a) {
        cg.presence[a] = consensus.presence[keep[a]];
        for (std::size_t b = 0; b < m; ++b) cg.support[a * m + b] = consensus.support[keep[a] * n + keep[b]];
    }
    return out;
}

CharacteristicPattern characteristic_pattern(std::size_t cluster_id, const std::vector<Pattern>& cluster_patterns,
                                             const CharacteristicOptions& options) {
    auto filtered = filter_low_participation(consensus_graph(cluster_patterns, options.node_order), cluster_patterns,
                                             options.participation_threshold);
    const auto& graph = filtered.consensus.graph;

    auto solution = solve_exact(graph, options.limits);
    CharacteristicPattern cp;
    if (!solution.optimal) {
        cp.heuristic_fallback = true;
        auto heuristic = solve_heuristic(graph, 0);
        if (heuristic.cost < solution.cost - kCostTieTolerance) {
            heuristic.nodes_explored = solution.nodes_explored;
            solution = std::move(heuristic);
        }
    }
    cp.cluster_id = cluster_id;
    for (const auto& p : cluster_patterns) cp.rollcall_ids.push_back(p.rollcall_id);
    cp.partition = std::move(solution.partition);
    cp.excluded = std::move(filtered.excluded);
    cp.cost = solution.cost;
    cp.optimal = solution.optimal;
    cp.nodes_explored = solution.nodes_explored;
    cp.consensus = std::move(filtered.consensus);
    return cp;
}

std::vector<FactionSummary> summarize_pattern(const CharacteristicPattern& cp, const VoteMatrix& matrix,
                                              const AbstentionThresholds& thresholds) {
    std::vector<std::size_t> columns;
    for (const auto& id : cp.rollcall_ids) {
        if (auto j = matrix.rollcall_index(id)) columns.push_back(*j);
    }
    std::vector<FactionSummary> out;
    for (const auto& block : cp.partition.blocks()) {
        FactionSummary f;
        f.size = block.size();
        for (const auto& id : block) {
            const auto i = matrix.voter_index(id);
            ++f.groups[i ? matrix.voters()[*i].group : std::string{}];
            if (!i || columns.empty()) continue;
            std::size_t abstained = 0;
            for (auto j : columns) abstained += matrix.vote(*i, j) == VoteValue::Abstain ? 1 : 0;
            if (static_cast<double>(abstained) > thresholds.abstain_rate * static_cast<double>(columns.size())) {
                ++f.abstainers;
            }
        }
        f.abstentionist =
            static_cast<double>(f.abstainers) > thresholds.member_share * static_cast<double>(f.size);
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace sigvote
