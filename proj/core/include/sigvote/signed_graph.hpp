#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace sigvote {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_real(double value);

/// Undirected signed graph with real weights in [-1, +1] on a dense node set.
/// A weight of 0 means "no edge"; unweighted signed graphs use +/-1.
class WeightedSignedGraph {
public:
    WeightedSignedGraph() = default;
    /// Throws std::invalid_argument on duplicate ids.
    explicit WeightedSignedGraph(std::vector<std::string> nodes);

    std::size_t size() const noexcept { return nodes_.size(); }
    bool empty() const noexcept { return nodes_.empty(); }
    const std::vector<std::string>& nodes() const noexcept { return nodes_; }
    std::optional<std::size_t> index_of(std::string_view id) const;

    double weight(std::size_t u, std::size_t v) const noexcept { return weights_[u * nodes_.size() + v]; }
    /// Sets w(u,v) = w(v,u). Throws std::invalid_argument for u == v, a
    /// non-finite weight or |w| > 1.
    void set_weight(std::size_t u, std::size_t v, double w);

    /// Graph scaled by `factor` without the |w| <= 1 check (used to test scale
    /// invariance of the solvers).
    WeightedSignedGraph scaled(double factor) const;

    /// Induced subgraph on the given node indices, in the given order.
    WeightedSignedGraph induced(const std::vector<std::size_t>& keep) const;

    bool operator==(const WeightedSignedGraph&) const = default;

private:
    std::vector<std::string> nodes_;
    std::vector<double> weights_;  // row-major n x n, symmetric, zero diagonal
};

/// Edge-list text: one `u,v,w` line per non-zero pair (u before v in node
/// order), preceded by a single-field `u` line for every node so that node
/// order and isolates survive a round trip. `#` lines are comments.
/// `integer_signs` writes +1/-1 instead of real weights (unweighted layers).
void write_edgelist(std::ostream& out, const WeightedSignedGraph& graph, bool integer_signs = false);
/// Reads the format above. Nodes are ordered by first appearance. Throws
/// ParseError on malformed lines, self-loops, conflicting duplicate edges or
/// weights outside [-1, 1].
WeightedSignedGraph read_edgelist(std::istream& in, const std::string& source_name);

}  // namespace sigvote
