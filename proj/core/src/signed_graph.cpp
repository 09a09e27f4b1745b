#include "sigvote/signed_graph.hpp"

#include "sigvote/csv.hpp"
#include "sigvote/error.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace sigvote {

std::string format_real(double value) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
}

WeightedSignedGraph::WeightedSignedGraph(std::vector<std::string> nodes)
    : nodes_(std::move(nodes)), weights_(nodes_.size() * nodes_.size(), 0.0) {
    std::unordered_set<std::string> seen;
    for (const auto& id : nodes_) {
        if (!seen.insert(id).second) throw std::invalid_argument("duplicate node id '" + id + "'");
    }
}

std::optional<std::size_t> WeightedSignedGraph::index_of(std::string_view id) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i] == id) return i;
    }
    return std::nullopt;
}

void WeightedSignedGraph::set_weight(std::size_t u, std::size_t v, double w) {
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    if (u >= size() || v >= size()) throw std::out_of_range("node index out of range");
    if (!std::isfinite(w) || std::abs(w) > 1.0) throw std::invalid_argument("weight must be finite and in [-1, 1]");
    weights_[u * size() + v] = w;
    weights_[v * size() + u] = w;
}

WeightedSignedGraph WeightedSignedGraph::scaled(double factor) const {
    WeightedSignedGraph g = *this;
    for (auto& w : g.weights_) w *= factor;
    return g;
}

WeightedSignedGraph WeightedSignedGraph::induced(const std::vector<std::size_t>& keep) const {
    std::vector<std::string> ids;
    ids.reserve(keep.size());
    for (auto i : keep) ids.push_back(nodes_.at(i));
    WeightedSignedGraph g(std::move(ids));
    for (std::size_t a = 0; a < keep.size(); ++a) {
        for (std::size_t b = a + 1; b < keep.size(); ++b) {
            const double w = weight(keep[a], keep[b]);
            g.weights_[a * keep.size() + b] = w;
            g.weights_[b * keep.size() + a] = w;
        }
    }
    return g;
}

void write_edgelist(std::ostream& out, const WeightedSignedGraph& graph, bool integer_signs) {
    for (const auto& id : graph.nodes()) out << csv::escape(id) << '\n';
    const auto n = graph.size();
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            const double w = graph.weight(u, v);
            if (w == 0.0) continue;
            out << csv::escape(graph.nodes()[u]) << ',' << csv::escape(graph.nodes()[v]) << ',';
            if (integer_signs) {
                out << (w > 0 ? "+1" : "-1");
            } else {
                out << format_real(w);
            }
            out << '\n';
        }
    }
}

WeightedSignedGraph read_edgelist(std::istream& in, const std::string& source_name) {
    struct Edge {
        std::size_t u, v;
        double w;
        std::size_t line;
    };
    std::vector<std::string> nodes;
    std::unordered_map<std::string, std::size_t> index;
    std::vector<Edge> edges;
    auto intern = [&](const std::string& id) {
        auto [it, inserted] = index.emplace(id, nodes.size());
        if (inserted) nodes.push_back(id);
        return it->second;
    };

    for (const auto& row : csv::read(in, source_name)) {
        if (!row.fields.empty() && !row.fields[0].empty() && row.fields[0][0] == '#') continue;
        if (row.fields.size() == 1) {
            if (row.fields[0].empty()) throw ParseError(source_name, row.line, "empty node id");
            intern(row.fields[0]);
            continue;
        }
        if (row.fields.size() != 3) throw ParseError(source_name, row.line, "expected 'u,v,weight'");
        const std::string& text = row.fields[2];
        // from_chars rejects a leading '+', which "+1" signs use
        const char* first = text.data() + (!text.empty() && text[0] == '+' ? 1 : 0);
        double w = 0.0;
        auto [p, ec] = std::from_chars(first, text.data() + text.size(), w);
        if (ec != std::errc{} || p != text.data() + text.size() || !std::isfinite(w) || std::abs(w) > 1.0) {
            throw ParseError(source_name, row.line, "invalid weight '" + text + "'");
        }
        if (row.fields[0] == row.fields[1]) throw ParseError(source_name, row.line, "self-loop");
        const auto u = intern(row.fields[0]);
        const auto v = intern(row.fields[1]);
        edges.push_back({u, v, w, row.line});
    }

    WeightedSignedGraph graph(nodes);
    std::vector<bool> set(nodes.size() * nodes.size(), false);
    for (const auto& e : edges) {
        const auto key = std::min(e.u, e.v) * nodes.size() + std::max(e.u, e.v);
        if (set[key] && graph.weight(e.u, e.v) != e.w) {
            throw ParseError(source_name, e.line, "conflicting duplicate edge");
        }
        set[key] = true;
        graph.set_weight(e.u, e.v, e.w);
    }
    return graph;
}

}  // namespace sigvote
