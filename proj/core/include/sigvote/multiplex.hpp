#pragma once

#include "sigvote/signed_graph.hpp"
#include "sigvote/vote_matrix.hpp"

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sigvote {

enum class AbstentionPolicy {
    Keep,  // ABSTAIN is a third vote value; abstainers are nodes
    Drop,  // abstainers are removed like absentees
};

std::string_view to_string(AbstentionPolicy p) noexcept;
/// "keep" / "drop" (case-insensitive); throws std::invalid_argument otherwise.
AbstentionPolicy parse_abstention_policy(std::string_view text);

using EdgeList = std::vector<std::pair<std::string, std::string>>;

/// One roll-call as an unweighted complete signed graph over its participants.
///
/// Edges are implicit: u and v are joined positively iff they cast the same
/// vote and negatively otherwise. The explicit edge sets are available through
/// positive_edges() / negative_edges().
class SignedLayer {
public:
    SignedLayer(std::string rollcall_id, std::vector<std::string> nodes, std::vector<VoteValue> values);

    const std::string& rollcall_id() const noexcept { return rollcall_id_; }
    const std::vector<std::string>& nodes() const noexcept { return nodes_; }
    const std::vector<VoteValue>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    /// Fewer than two participants: no edge, nothing to partition.
    bool degenerate() const noexcept { return nodes_.size() < 2; }

    int sign(std::size_t u, std::size_t v) const noexcept { return values_[u] == values_[v] ? +1 : -1; }
    EdgeList positive_edges() const;
    EdgeList negative_edges() const;

    WeightedSignedGraph to_graph() const;

private:
    std::string rollcall_id_;
    std::vector<std::string> nodes_;
    std::vector<VoteValue> values_;
};

struct MultiplexGraph {
    std::vector<std::string> voters;  // shared universe, matrix order
    std::vector<SignedLayer> layers;  // one per roll-call, matrix order
};

/// Throws std::invalid_argument for an unknown roll-call id.
SignedLayer extract_layer(const VoteMatrix& matrix, std::string_view rollcall_id, AbstentionPolicy policy);
SignedLayer extract_layer(const VoteMatrix& matrix, std::size_t rollcall, AbstentionPolicy policy);
/// Throws std::invalid_argument for an empty matrix.
MultiplexGraph extract_multiplex(const VoteMatrix& matrix, AbstentionPolicy policy);

/// `u,v,+1|-1` edge list (see write_edgelist).
void write_layer_edgelist(std::ostream& out, const SignedLayer& layer);
/// GraphML document with one graph per layer and a `sign` edge attribute.
void write_graphml(std::ostream& out, const MultiplexGraph& graph);

}  // namespace sigvote
