#include "sigvote/multiplex.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace sigvote {

std::string_view to_string(AbstentionPolicy p) noexcept { return p == AbstentionPolicy::Keep ? "keep" : "drop"; }

AbstentionPolicy parse_abstention_policy(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "keep") return AbstentionPolicy::Keep;
    if (lower == "drop") return AbstentionPolicy::Drop;
    throw std::invalid_argument("abstention policy must be 'keep' or 'drop', got '" + std::string(text) + "'");
}

SignedLayer::SignedLayer(std::string rollcall_id, std::vector<std::string> nodes, std::vector<VoteValue> values)
    : rollcall_id_(std::move(rollcall_id)), nodes_(std::move(nodes)), values_(std::move(values)) {
    if (nodes_.size() != values_.size()) throw std::invalid_argument("layer nodes and values differ in length");
    if (std::find(values_.begin(), values_.end(), VoteValue::Absent) != values_.end()) {
        throw std::invalid_argument("absent voters cannot be layer nodes");
    }
}

EdgeList SignedLayer::positive_edges() const {
    EdgeList out;
    for (std::size_t u = 0; u < size(); ++u) {
        for (std::size_t v = u + 1; v < size(); ++v) {
            if (sign(u, v) > 0) out.emplace_back(nodes_[u], nodes_[v]);
        }
    }
    return out;
}

EdgeList SignedLayer::negative_edges() const {
    EdgeList out;
    for (std::size_t u = 0; u < size(); ++u) {
        for (std::size_t v = u + 1; v < size(); ++v) {
            if (sign(u, v) < 0) out.emplace_back(nodes_[u], nodes_[v]);
        }
    }
    return out;
}

WeightedSignedGraph SignedLayer::to_graph() const {
    WeightedSignedGraph g(nodes_);
    for (std::size_t u = 0; u < size(); ++u) {
        for (std::size_t v = u + 1; v < size(); ++v) g.set_weight(u, v, sign(u, v));
    }
    return g;
}

SignedLayer extract_layer(const VoteMatrix& matrix, std::size_t rollcall, AbstentionPolicy policy) {
    if (rollcall >= matrix.n_rollcalls()) throw std::invalid_argument("roll-call index out of range");
    std::vector<std::string> nodes;
    std::vector<VoteValue> values;
    for (std::size_t i = 0; i < matrix.n_voters(); ++i) {
        const auto v = matrix.vote(i, rollcall);
        if (v == VoteValue::Absent) continue;
        if (v == VoteValue::Abstain && policy == AbstentionPolicy::Drop) continue;
        nodes.push_back(matrix.voters()[i].id);
        values.push_back(v);
    }
    return SignedLayer(matrix.rollcalls()[rollcall].rollcall_id, std::move(nodes), std::move(values));
}

SignedLayer extract_layer(const VoteMatrix& matrix, std::string_view rollcall_id, AbstentionPolicy policy) {
    auto index = matrix.rollcall_index(rollcall_id);
    if (!index) throw std::invalid_argument("unknown roll-call id '" + std::string(rollcall_id) + "'");
    return extract_layer(matrix, *index, policy);
}

MultiplexGraph extract_multiplex(const VoteMatrix& matrix, AbstentionPolicy policy) {
    if (matrix.empty()) throw std::invalid_argument("cannot extract a multiplex graph from an empty matrix");
    MultiplexGraph g;
    for (const auto& v : matrix.voters()) g.voters.push_back(v.id);
    g.layers.reserve(matrix.n_rollcalls());
    for (std::size_t j = 0; j < matrix.n_rollcalls(); ++j) g.layers.push_back(extract_layer(matrix, j, policy));
    return g;
}

void write_layer_edgelist(std::ostream& out, const SignedLayer& layer) {
    out << "# rollcall " << layer.rollcall_id() << '\n';
    write_edgelist(out, layer.to_graph(), true);
}

namespace {

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

void write_graphml(std::ostream& out, const MultiplexGraph& graph) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"sign\" for=\"edge\" attr.name=\"sign\" attr.type=\"int\"/>\n"
        << "  <key id=\"vote\" for=\"node\" attr.name=\"vote\" attr.type=\"string\"/>\n";
    for (const auto& layer : graph.layers) {
        out << "  <graph id=\"" << xml_escape(layer.rollcall_id()) << "\" edgedefault=\"undirected\">\n";
        for (std::size_t u = 0; u < layer.size(); ++u) {
            out << "    <node id=\"" << xml_escape(layer.nodes()[u]) << "\"><data key=\"vote\">"
                << to_string(layer.values()[u]) << "</data></node>\n";
        }
        for (std::size_t u = 0; u < layer.size(); ++u) {
            for (std::size_t v = u + 1; v < layer.size(); ++v) {
                out << "    <edge source=\"" << xml_escape(layer.nodes()[u]) << "\" target=\""
                    << xml_escape(layer.nodes()[v]) << "\"><data key=\"sign\">" << layer.sign(u, v)
                    << "</data></edge>\n";
            }
        }
        out << "  </graph>\n";
    }
    out << "</graphml>\n";
}

}  // namespace sigvote
