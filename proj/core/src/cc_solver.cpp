#include "sigvote/cc_solver.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace sigvote {

std::vector<int> to_restricted_growth(std::span<const int> labels) {
    std::unordered_map<int, int> remap;
    std::vector<int> out;
    out.reserve(labels.size());
    for (int l : labels) {
        auto [it, inserted] = remap.emplace(l, static_cast<int>(remap.size()));
        out.push_back(it->second);
    }
    return out;
}

double imbalance(const WeightedSignedGraph& graph, std::span<const int> labels) {
    if (labels.size() != graph.size()) throw std::invalid_argument("label count does not match graph size");
    const auto n = graph.size();
    double cost = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            const double w = graph.weight(u, v);
            const bool together = labels[u] == labels[v];
            if (w > 0 && !together) cost += w;
            if (w < 0 && together) cost -= w;
        }
    }
    return cost;
}

namespace {

std::vector<int> labels_for(const WeightedSignedGraph& graph, const Partition& partition) {
    if (partition.n_members() != graph.size()) {
        throw std::invalid_argument("partition does not cover the graph's node set");
    }
    std::vector<int> labels(graph.size(), -1);
    for (std::size_t b = 0; b < partition.n_blocks(); ++b) {
        for (const auto& id : partition.blocks()[b]) {
            auto i = graph.index_of(id);
            if (!i) throw std::invalid_argument("partition member '" + id + "' is not a graph node");
            labels[*i] = static_cast<int>(b);
        }
    }
    return labels;
}

Partition partition_for(const WeightedSignedGraph& graph, std::span<const int> labels) {
    return Partition::from_labels(graph.nodes(), labels);
}

/// Tie-aware acceptance shared by the exact and brute-force searches.
bool improves(double cost, std::span<const int> rgs, double best_cost, std::span<const int> best_rgs) {
    if (cost < best_cost - kCostTieTolerance) return true;
    if (cost > best_cost + kCostTieTolerance) return false;
    return std::lexicographical_compare(rgs.begin(), rgs.end(), best_rgs.begin(), best_rgs.end());
}

void require_nonempty(const WeightedSignedGraph& graph) {
    if (graph.empty()) throw std::invalid_argument("graph has no nodes");
}

class ExactSearch {
public:
    ExactSearch(const WeightedSignedGraph& graph, const SolveLimits& limits, std::vector<int> incumbent)
        : g_(graph),
          n_(graph.size()),
          limits_(limits),
          best_rgs_(std::move(incumbent)),
          best_cost_(imbalance(graph, best_rgs_)),
          labels_(n_, -1),
          pos_to_(n_ * n_, 0.0),
          neg_to_(n_ * n_, 0.0),
          pos_total_(n_, 0.0),
          order_(n_ + 1, Order::Equal) {
        start_ = std::chrono::steady_clock::now();
    }

    CCSolution run() {
        // node 0 always opens block 0
        assign(0, 0);
        descend(1);
        unassign(0, 0);
        CCSolution s;
        s.partition = partition_for(g_, best_rgs_);
        s.cost = best_cost_;
        s.optimal = !aborted_;
        s.nodes_explored = explored_;
        return s;
    }

private:
    enum class Order : std::uint8_t { Less, Equal, Greater };

    double w(std::size_t u, std::size_t v) const { return g_.weight(u, v); }

    // cost of placing undecided v into block b given the decided prefix
    double join_cost(std::size_t v, int b) const {
        return pos_total_[v] - pos_to_[v * n_ + b] + neg_to_[v * n_ + b];
    }

    void assign(std::size_t d, int b) {
        fixed_ += d == 0 ? 0.0 : join_cost(d, b);
        labels_[d] = b;
        if (b == n_blocks_) ++n_blocks_;
        for (std::size_t v = d + 1; v < n_; ++v) {
            const double x = w(d, v);
            if (x > 0) {
                pos_to_[v * n_ + b] += x;
                pos_total_[v] += x;
            } else if (x < 0) {
                neg_to_[v * n_ + b] -= x;
            }
        }
        const Order parent = d == 0 ? Order::Equal : order_[d - 1];
        if (parent != Order::Equal) {
            order_[d] = parent;
        } else {
            order_[d] = b < best_rgs_[d] ? Order::Less : (b > best_rgs_[d] ? Order::Greater : Order::Equal);
        }
    }

    void unassign(std::size_t d, int b) {
        for (std::size_t v = d + 1; v < n_; ++v) {
            const double x = w(d, v);
            if (x > 0) {
                pos_to_[v * n_ + b] -= x;
                pos_total_[v] -= x;
            } else if (x < 0) {
                neg_to_[v * n_ + b] += x;
            }
        }
        labels_[d] = -1;
        if (b == n_blocks_ - 1 && std::none_of(labels_.begin(), labels_.begin() + static_cast<long>(d),
                                               [b](int l) { return l == b; })) {
            --n_blocks_;
        }
        fixed_ -= d == 0 ? 0.0 : join_cost(d, b);
    }

    double lower_bound(std::size_t depth) const {
        double bound = fixed_;
        for (std::size_t v = depth; v < n_; ++v) {
            double cheapest = pos_total_[v];  // opening a new block
            for (int b = 0; b < n_blocks_ && cheapest > 0.0; ++b) cheapest = std::min(cheapest, join_cost(v, b));
            bound += cheapest;
        }
        return bound;
    }

    bool out_of_budget() {
        if (limits_.node_limit && explored_ >= *limits_.node_limit) return true;
        if (limits_.time_limit && (explored_ & 1023) == 0 &&
            std::chrono::steady_clock::now() - start_ > *limits_.time_limit) {
            return true;
        }
        return false;
    }

    void descend(std::size_t depth) {
        if (aborted_) return;
        if (depth == n_) {
            const double cost = imbalance(g_, labels_);
            if (improves(cost, labels_, best_cost_, best_rgs_)) {
                best_cost_ = cost;
                best_rgs_ = labels_;
                std::fill(order_.begin(), order_.end(), Order::Equal);
            }
            return;
        }
        const int max_label = n_blocks_;  // labels 0..n_blocks_ (the last opens a block)
        for (int b = 0; b <= max_label; ++b) {
            ++explored_;
            if (out_of_budget()) {
                aborted_ = true;
                return;
            }
            assign(depth, b);
            const double bound = lower_bound(depth + 1);
            const bool prune = bound > best_cost_ + kCostTieTolerance ||
                               (bound >= best_cost_ - kCostTieTolerance && order_[depth] == Order::Greater);
            if (!prune) descend(depth + 1);
            unassign(depth, b);
            if (aborted_) return;
        }
    }

    const WeightedSignedGraph& g_;
    const std::size_t n_;
    const SolveLimits limits_;
    std::vector<int> best_rgs_;
    double best_cost_;

    std::vector<int> labels_;
    int n_blocks_ = 0;
    double fixed_ = 0.0;  // imbalance among decided nodes
    std::vector<double> pos_to_;     // [v][b]: positive weight from undecided v to block b
    std::vector<double> neg_to_;     // [v][b]: |negative weight| from undecided v to block b
    std::vector<double> pos_total_;  // [v]: positive weight from undecided v to all decided nodes
    std::vector<Order> order_;       // prefix vs incumbent, per depth

    std::chrono::steady_clock::time_point start_;
    std::uint64_t explored_ = 0;
    bool aborted_ = false;
};

std::vector<int> heuristic_labels(const WeightedSignedGraph& g, std::uint64_t seed) {
    const auto n = g.size();
    std::vector<int> labels(n, -1);
    int n_blocks = 0;
    std::vector<double> to_block;

    // greedy insertion in node order
    for (std::size_t v = 0; v < n; ++v) {
        to_block.assign(static_cast<std::size_t>(n_blocks), 0.0);
        double pos_sum = 0.0;
        for (std::size_t u = 0; u < v; ++u) {
            const double x = g.weight(u, v);
            to_block[static_cast<std::size_t>(labels[u])] += x;
            if (x > 0) pos_sum += x;
        }
        // cost(join b) = pos_sum - sum of w to b, so minimise by maximising the block sum
        int best = n_blocks;
        double best_gain = 0.0;
        for (int b = 0; b < n_blocks; ++b) {
            if (to_block[static_cast<std::size_t>(b)] > best_gain) {
                best_gain = to_block[static_cast<std::size_t>(b)];
                best = b;
            }
        }
        labels[v] = best;
        if (best == n_blocks) ++n_blocks;
    }

    // single-node moves; moving v from a to b changes cost by sum_w(a) - sum_w(b)
    std::vector<std::size_t> visit(n);
    std::iota(visit.begin(), visit.end(), 0);
    std::mt19937_64 rng(seed);
    std::vector<int> block_size(n, 0);
    for (int l : labels) ++block_size[static_cast<std::size_t>(l)];
    bool moved = true;
    while (moved) {
        moved = false;
        std::shuffle(visit.begin(), visit.end(), rng);
        for (auto v : visit) {
            to_block.assign(n, 0.0);
            for (std::size_t u = 0; u < n; ++u) {
                if (u != v) to_block[static_cast<std::size_t>(labels[u])] += g.weight(u, v);
            }
            const auto own = static_cast<std::size_t>(labels[v]);
            double best_delta = -1e-12;
            int best = -1;
            int empty_block = -1;
            for (std::size_t b = 0; b < n; ++b) {
                if (b == own) continue;
                if (block_size[b] == 0) {
                    if (empty_block < 0) empty_block = static_cast<int>(b);
                    continue;
                }
                const double delta = to_block[own] - to_block[b];
                if (delta < best_delta) {
                    best_delta = delta;
                    best = static_cast<int>(b);
                }
            }
            // isolating v in a fresh block
            if (block_size[own] > 1 && empty_block >= 0 && to_block[own] < best_delta) {
                best = empty_block;
            }
            if (best >= 0) {
                --block_size[own];
                ++block_size[static_cast<std::size_t>(best)];
                labels[v] = best;
                moved = true;
            }
        }
    }
    return to_restricted_growth(labels);
}

}  // namespace

double imbalance(const WeightedSignedGraph& graph, const Partition& partition) {
    const auto labels = labels_for(graph, partition);
    return imbalance(graph, std::span<const int>(labels));
}

CCSolution solve_heuristic(const WeightedSignedGraph& graph, std::uint64_t seed) {
    require_nonempty(graph);
    const auto labels = heuristic_labels(graph, seed);
    CCSolution s;
    s.partition = partition_for(graph, labels);
    s.cost = imbalance(graph, std::span<const int>(labels));
    s.optimal = false;
    return s;
}

CCSolution solve_exact(const WeightedSignedGraph& graph, const SolveLimits& limits) {
    require_nonempty(graph);
    ExactSearch search(graph, limits, heuristic_labels(graph, 0));
    return search.run();
}

CCSolution brute_force(const WeightedSignedGraph& graph) {
    require_nonempty(graph);
    const auto n = graph.size();
    if (n > kBruteForceMaxNodes) {
        throw std::invalid_argument("graph too large for brute force: " + std::to_string(n) + " > " +
                                    std::to_string(kBruteForceMaxNodes) + " nodes");
    }
    // restricted-growth strings in lexicographic order
    std::vector<int> rgs(n, 0);
    std::vector<int> prefix_max(n, 0);  // max of rgs[0..i]
    std::vector<int> best_rgs;
    double best_cost = std::numeric_limits<double>::infinity();
    std::uint64_t visited = 0;
    while (true) {
        ++visited;
        const double cost = imbalance(graph, std::span<const int>(rgs));
        if (best_rgs.empty() || improves(cost, rgs, best_cost, best_rgs)) {
            best_cost = cost;
            best_rgs = rgs;
        }
        std::size_t i = n;
        while (i > 1 && rgs[i - 1] > prefix_max[i - 2]) --i;
        if (i <= 1) break;
        ++rgs[i - 1];
        prefix_max[i - 1] = std::max(prefix_max[i - 2], rgs[i - 1]);
        for (std::size_t j = i; j < n; ++j) {
            rgs[j] = 0;
            prefix_max[j] = prefix_max[j - 1];
        }
    }
    CCSolution s;
    s.partition = partition_for(graph, best_rgs);
    s.cost = best_cost;
    s.optimal = true;
    s.nodes_explored = visited;
    return s;
}

}  // namespace sigvote
