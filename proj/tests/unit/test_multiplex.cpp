#include "sigvote/multiplex.hpp"
#include "sigvote/synthetic.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

using namespace sigvote;
using V = VoteValue;

namespace {

VoteMatrix column(const std::vector<V>& votes) {
    std::vector<Voter> voters;
    const char* names[] = {"a", "b", "c", "d", "e", "f"};
    for (std::size_t i = 0; i < votes.size(); ++i) voters.push_back({names[i], "", "FR", "", "G"});
    return VoteMatrix(voters, {{"r1", "", "", {}}}, votes);
}

EdgeList sorted(EdgeList e) {
    std::sort(e.begin(), e.end());
    return e;
}

}  // namespace

TEST(ExtractLayer, SignRule) {
    const auto layer = extract_layer(column({V::For, V::For, V::Against}), "r1", AbstentionPolicy::Keep);
    EXPECT_EQ(layer.nodes(), (std::vector<std::string>{"a", "b", "c"}));
    EXPECT_EQ(sorted(layer.positive_edges()), (EdgeList{{"a", "b"}}));
    EXPECT_EQ(sorted(layer.negative_edges()), (EdgeList{{"a", "c"}, {"b", "c"}}));
}

TEST(ExtractLayer, KeepAbstainers) {
    const auto layer = extract_layer(column({V::For, V::Abstain, V::Absent}), "r1", AbstentionPolicy::Keep);
    EXPECT_EQ(layer.nodes(), (std::vector<std::string>{"a", "b"}));
    EXPECT_TRUE(layer.positive_edges().empty());
    EXPECT_EQ(layer.negative_edges(), (EdgeList{{"a", "b"}}));
}

TEST(ExtractLayer, DropAbstainers) {
    const auto layer = extract_layer(column({V::For, V::Abstain, V::Absent}), "r1", AbstentionPolicy::Drop);
    EXPECT_EQ(layer.nodes(), (std::vector<std::string>{"a"}));
    EXPECT_TRUE(layer.positive_edges().empty());
    EXPECT_TRUE(layer.negative_edges().empty());
    EXPECT_TRUE(layer.degenerate());
}

TEST(ExtractLayer, AbstainAbstainIsPositiveUnderKeep) {
    const auto layer = extract_layer(column({V::Abstain, V::Abstain, V::For}), "r1", AbstentionPolicy::Keep);
    EXPECT_EQ(layer.positive_edges(), (EdgeList{{"a", "b"}}));
}

TEST(ExtractLayer, UnknownRollcallThrows) {
    EXPECT_THROW(extract_layer(column({V::For}), "r9", AbstentionPolicy::Keep), std::invalid_argument);
}

TEST(ExtractMultiplex, LayerOrderAndDegenerates) {
    VoteMatrix m({{"a", "", "FR", "", "G"}, {"b", "", "FR", "", "G"}, {"c", "", "FR", "", "G"}},
                 {{"r1", "", "", {}}, {"r2", "", "", {}}, {"r3", "", "", {}}},
                 {V::For, V::Absent, V::For,  //
                  V::For, V::Absent, V::Against,  //
                  V::For, V::Absent, V::Abstain});
    const auto g = extract_multiplex(m, AbstentionPolicy::Keep);
    ASSERT_EQ(g.layers.size(), 3u);
    EXPECT_EQ(g.layers[2].rollcall_id(), "r3");
    EXPECT_TRUE(g.layers[1].degenerate());
    EXPECT_TRUE(g.layers[1].nodes().empty());
    // unanimous r1: complete positive layer
    EXPECT_TRUE(g.layers[0].negative_edges().empty());
    EXPECT_EQ(g.layers[0].positive_edges().size(), 3u);
    EXPECT_EQ(g.layers[2].negative_edges().size(), 3u);
}

TEST(ExtractMultiplex, EmptyMatrixThrows) {
    EXPECT_THROW(extract_multiplex(VoteMatrix{}, AbstentionPolicy::Keep), std::invalid_argument);
}

TEST(ExtractMultiplex, LayerInvariants) {
    const auto data = generate_synthetic(default_synthetic_spec(3));
    for (auto policy : {AbstentionPolicy::Keep, AbstentionPolicy::Drop}) {
        const auto g = extract_multiplex(data.matrix, policy);
        ASSERT_EQ(g.layers.size(), data.matrix.n_rollcalls());
        for (std::size_t j = 0; j < g.layers.size(); ++j) {
            const auto& layer = g.layers[j];
            const auto n = layer.size();
            const auto pos = layer.positive_edges(), neg = layer.negative_edges();
            // complete over participants, disjoint
            EXPECT_EQ(pos.size() + neg.size(), n * (n - (n > 0 ? 1 : 0)) / 2);
            auto all = pos;
            all.insert(all.end(), neg.begin(), neg.end());
            std::sort(all.begin(), all.end());
            EXPECT_EQ(std::adjacent_find(all.begin(), all.end()), all.end());
            for (const auto& [u, v] : all) EXPECT_NE(u, v);
            // participant set matches the policy
            std::size_t expected = 0;
            for (std::size_t i = 0; i < data.matrix.n_voters(); ++i) {
                const auto x = data.matrix.vote(i, j);
                expected += x == V::For || x == V::Against || (x == V::Abstain && policy == AbstentionPolicy::Keep);
            }
            EXPECT_EQ(n, expected);
        }
    }
}

TEST(ExtractMultiplex, ForAgainstSwapLeavesLayerUnchanged) {
    std::mt19937_64 rng(10);
    std::uniform_int_distribution<int> pick(0, 3);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<V> votes(6), swapped(6);
        for (std::size_t i = 0; i < 6; ++i) {
            votes[i] = static_cast<V>(pick(rng));
            swapped[i] = votes[i] == V::For ? V::Against : votes[i] == V::Against ? V::For : votes[i];
        }
        for (auto policy : {AbstentionPolicy::Keep, AbstentionPolicy::Drop}) {
            const auto a = extract_layer(column(votes), "r1", policy);
            const auto b = extract_layer(column(swapped), "r1", policy);
            EXPECT_EQ(a.positive_edges(), b.positive_edges());
            EXPECT_EQ(a.negative_edges(), b.negative_edges());
        }
    }
}

TEST(ExtractLayer, GraphAndExports) {
    const auto layer = extract_layer(column({V::For, V::For, V::Against}), "r1", AbstentionPolicy::Keep);
    const auto g = layer.to_graph();
    EXPECT_EQ(g.weight(0, 1), 1.0);
    EXPECT_EQ(g.weight(0, 2), -1.0);
    std::ostringstream edges;
    write_layer_edgelist(edges, layer);
    EXPECT_NE(edges.str().find("a,b,+1"), std::string::npos);
    EXPECT_NE(edges.str().find("b,c,-1"), std::string::npos);
    std::ostringstream graphml;
    write_graphml(graphml, {{"a", "b", "c"}, {layer}});
    EXPECT_NE(graphml.str().find("<graphml"), std::string::npos);
    EXPECT_NE(graphml.str().find("r1"), std::string::npos);
}

TEST(AbstentionPolicy, Parse) {
    EXPECT_EQ(parse_abstention_policy("KEEP"), AbstentionPolicy::Keep);
    EXPECT_EQ(parse_abstention_policy("drop"), AbstentionPolicy::Drop);
    EXPECT_THROW(parse_abstention_policy("ignore"), std::invalid_argument);
}
