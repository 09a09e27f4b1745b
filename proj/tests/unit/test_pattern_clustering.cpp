#include "sigvote/pattern_clustering.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

using namespace sigvote;

namespace {

std::vector<std::string> ids(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back("r" + std::to_string(i + 1));
    return out;
}

/// D from a group label per pattern: `within` inside groups, `across` between.
DissimilarityMatrix grouped(const std::vector<int>& group, double within, double across) {
    DissimilarityMatrix d(ids(group.size()), Measure::Purity);
    for (std::size_t i = 0; i < group.size(); ++i) {
        for (std::size_t j = i + 1; j < group.size(); ++j) d.set(i, j, group[i] == group[j] ? within : across);
    }
    return d;
}

/// Groups with jittered dissimilarities.
DissimilarityMatrix noisy_groups(const std::vector<int>& group, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> in(0.02, 0.15), out(0.7, 1.0);
    DissimilarityMatrix d(ids(group.size()), Measure::Nmi);
    for (std::size_t i = 0; i < group.size(); ++i) {
        for (std::size_t j = i + 1; j < group.size(); ++j) d.set(i, j, group[i] == group[j] ? in(rng) : out(rng));
    }
    return d;
}

struct OracleClustering {
    double cost = INFINITY;
    std::vector<std::size_t> label;  // nearest medoid per pattern
};

/// Minimum k-medoids cost over every medoid subset, each point assigned to its
/// nearest medoid.
OracleClustering oracle_k_medoids(const DissimilarityMatrix& d, std::size_t k) {
    const auto n = d.size();
    std::vector<bool> choose(n, false);
    std::fill(choose.begin(), choose.begin() + static_cast<std::ptrdiff_t>(k), true);
    OracleClustering best;
    do {
        std::vector<std::size_t> medoids;
        for (std::size_t i = 0; i < n; ++i) {
            if (choose[i]) medoids.push_back(i);
        }
        double cost = 0;
        std::vector<std::size_t> label(n);
        for (std::size_t j = 0; j < n; ++j) {
            double near = INFINITY;
            for (std::size_t m = 0; m < k; ++m) {
                if (d(j, medoids[m]) < near) {
                    near = d(j, medoids[m]);
                    label[j] = m;
                }
            }
            cost += near;
        }
        if (cost < best.cost - 1e-12) best = {cost, label};
    } while (std::prev_permutation(choose.begin(), choose.end()));
    return best;
}

/// Mean silhouette straight from the definition.
double oracle_silhouette(const DissimilarityMatrix& d, const std::vector<std::size_t>& label) {
    const auto n = d.size();
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::map<std::size_t, std::pair<double, double>> by_cluster;  // sum, count
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            auto& e = by_cluster[label[j]];
            e.first += d(i, j);
            e.second += 1;
        }
        if (!by_cluster.count(label[i])) continue;  // singleton
        const double a = by_cluster[label[i]].first / by_cluster[label[i]].second;
        double b = INFINITY;
        for (const auto& [c, e] : by_cluster) {
            if (c != label[i]) b = std::min(b, e.first / e.second);
        }
        const double m = std::max(a, b);
        if (m > 0) total += (b - a) / m;
    }
    return total / static_cast<double>(n);
}

/// Same-cluster relation, independent of cluster numbering.
bool same_grouping(const std::vector<std::size_t>& x, const std::vector<std::size_t>& y) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) {
            if ((x[i] == x[j]) != (y[i] == y[j])) return false;
        }
    }
    return true;
}

}  // namespace

TEST(KMedoids, KEqualsNIsZeroCost) {
    std::mt19937_64 rng(1);
    const auto d = noisy_groups({0, 0, 1, 1, 2, 2, 2}, rng);
    const auto c = k_medoids(d, 7);
    EXPECT_DOUBLE_EQ(c.cost, 0.0);
    auto medoids = c.medoids;
    std::sort(medoids.begin(), medoids.end());
    EXPECT_EQ(medoids, (std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6}));
}

TEST(KMedoids, TwoDuplicateGroups) {
    const auto d = grouped({0, 1, 0, 1, 1}, 0.0, 1.0);
    const auto c = k_medoids(d, 2);
    EXPECT_DOUBLE_EQ(c.cost, 0.0);
    // canonical ids: larger cluster first
    EXPECT_EQ(c.assignment, (std::vector<std::size_t>{1, 0, 1, 0, 0}));
    EXPECT_EQ(c.sizes(), (std::vector<std::size_t>{3, 2}));
}

TEST(KMedoids, TightPairs) {
    const auto d = grouped({0, 0, 1, 1}, 0.1, 0.9);
    const auto oracle = oracle_k_medoids(d, 2);
    EXPECT_NEAR(oracle.cost, 0.2, 1e-12);
    const auto c = k_medoids(d, 2);
    EXPECT_NEAR(c.cost, 0.2, 1e-12);
    EXPECT_TRUE(same_grouping(c.assignment, oracle.label));
    EXPECT_EQ(c.assignment, (std::vector<std::size_t>{0, 0, 1, 1}));
}

TEST(KMedoids, MatchesExhaustiveOptimumOnSmallInputs) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> g(0, 2);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> group(10);
        for (auto& x : group) x = g(rng);
        const auto d = noisy_groups(group, rng);
        for (std::size_t k = 1; k <= 4; ++k) {
            EXPECT_NEAR(k_medoids(d, k).cost, oracle_k_medoids(d, k).cost, 1e-9) << "trial " << trial << " k " << k;
        }
    }
}

TEST(KMedoids, RejectsKOutOfRange) {
    const auto d = grouped({0, 1}, 0.0, 1.0);
    EXPECT_THROW(k_medoids(d, 0), std::invalid_argument);
    EXPECT_THROW(k_medoids(d, 3), std::invalid_argument);
}

TEST(KMedoids, DeterministicAndCanonical) {
    std::mt19937_64 rng(4);
    std::vector<int> group(30);
    for (std::size_t i = 0; i < group.size(); ++i) group[i] = static_cast<int>(i * 7 % 4);
    const auto d = noisy_groups(group, rng);
    KMedoidsOptions options{99, 8};
    const auto c = k_medoids(d, 4, options);
    EXPECT_EQ(c, k_medoids(d, 4, options));
    const auto sizes = c.sizes();
    EXPECT_TRUE(std::is_sorted(sizes.rbegin(), sizes.rend()));
    for (std::size_t m = 0; m < c.k; ++m) EXPECT_EQ(c.assignment[c.medoids[m]], m);
}

TEST(KMedoids, CostNonNegativeAndZeroAtN) {
    std::mt19937_64 rng(6);
    std::vector<int> group{0, 1, 2, 0, 1, 2, 0, 1};
    const auto d = noisy_groups(group, rng);
    for (std::size_t k = 1; k <= d.size(); ++k) EXPECT_GE(k_medoids(d, k).cost, 0.0);
    EXPECT_DOUBLE_EQ(k_medoids(d, d.size()).cost, 0.0);
}

TEST(Silhouette, DuplicateGroupsIsOne) {
    const auto d = grouped({0, 0, 1, 1}, 0.0, 1.0);
    EXPECT_DOUBLE_EQ(silhouette(d, k_medoids(d, 2)), 1.0);
}

TEST(Silhouette, AllIdenticalIsZero) {
    const auto d = grouped({0, 0, 0, 0, 0}, 0.0, 1.0);
    Clustering c{2, {0, 0, 0, 1, 1}, {0, 3}, 0.0};
    EXPECT_DOUBLE_EQ(silhouette(d, c), 0.0);
}

TEST(Silhouette, TightPairsEightNinths) {
    const auto d = grouped({0, 0, 1, 1}, 0.1, 0.9);
    EXPECT_NEAR(silhouette(d, k_medoids(d, 2)), 8.0 / 9.0, 1e-12);
}

TEST(Silhouette, SingletonsContributeZero) {
    const auto d = grouped({0, 0, 1}, 0.1, 0.9);
    Clustering c{2, {0, 0, 1}, {0, 2}, 0.1};
    // two points at 8/9, the singleton at 0
    EXPECT_NEAR(silhouette(d, c), (8.0 / 9.0) * 2 / 3, 1e-12);
}

TEST(Silhouette, MatchesOracleAndBounded) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 9;
        DissimilarityMatrix d(ids(n), Measure::RandIndex);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) d.set(i, j, u(rng));
        }
        for (std::size_t k = 2; k <= 4; ++k) {
            const auto c = k_medoids(d, k, {static_cast<std::uint64_t>(trial), 3});
            const double s = silhouette(d, c);
            EXPECT_NEAR(s, oracle_silhouette(d, c.assignment), 1e-12);
            EXPECT_GE(s, -1.0);
            EXPECT_LE(s, 1.0);
        }
    }
}

TEST(Silhouette, RejectsSingleCluster) {
    const auto d = grouped({0, 0}, 0.0, 1.0);
    EXPECT_THROW(silhouette(d, k_medoids(d, 1)), std::invalid_argument);
}

TEST(Sweep, PlantedThreeGroupsPeakAtThree) {
    std::mt19937_64 rng(21);
    const std::vector<int> group{0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 2, 0};
    const auto d = noisy_groups(group, rng);
    // the oracle picks k by silhouette of the exhaustive optimum at each k
    std::size_t oracle_k = 0;
    double oracle_best = -2;
    for (std::size_t k = 2; k <= 6; ++k) {
        const double s = oracle_silhouette(d, oracle_k_medoids(d, k).label);
        if (s > oracle_best) {
            oracle_best = s;
            oracle_k = k;
        }
    }
    ASSERT_EQ(oracle_k, 3u);
    const auto sweep = sweep_k(d, 2, 6);
    EXPECT_EQ(sweep.best_k(), 3u);
    EXPECT_NEAR(sweep.at_k(3).silhouette, oracle_best, 1e-12);
    std::vector<std::size_t> planted(group.begin(), group.end());
    EXPECT_TRUE(same_grouping(sweep.at_k(3).clustering.assignment, planted));
}

TEST(Sweep, IdenticalPatternsWellFormed) {
    const auto d = grouped(std::vector<int>(6, 0), 0.0, 1.0);
    const auto sweep = sweep_k(d, 2, 6);
    ASSERT_EQ(sweep.entries.size(), 5u);
    for (const auto& e : sweep.entries) EXPECT_NEAR(e.silhouette, 0.0, 1e-12);
    EXPECT_EQ(sweep.transitions.size(), 4u);
}

TEST(Sweep, KMaxEqualsNIsAllSingletons) {
    std::mt19937_64 rng(2);
    const auto d = noisy_groups({0, 0, 1, 1, 1}, rng);
    const auto sweep = sweep_k(d, 2, 5);
    EXPECT_DOUBLE_EQ(sweep.entries.back().clustering.cost, 0.0);
    EXPECT_DOUBLE_EQ(sweep.entries.back().silhouette, 0.0);
}

TEST(Sweep, EntriesIndependentOfRangeAndJobs) {
    std::mt19937_64 rng(3);
    std::vector<int> group(16);
    for (std::size_t i = 0; i < group.size(); ++i) group[i] = static_cast<int>(i % 4);
    const auto d = noisy_groups(group, rng);
    KMedoidsOptions options{5, 6};
    const auto wide = sweep_k(d, 2, 8, options, 1);
    const auto narrow = sweep_k(d, 4, 6, options, 3);
    for (std::size_t k = 4; k <= 6; ++k) EXPECT_EQ(wide.at_k(k).clustering, narrow.at_k(k).clustering);
}

TEST(Sweep, TransitionsConserveMass) {
    std::mt19937_64 rng(8);
    std::vector<int> group(14);
    for (std::size_t i = 0; i < group.size(); ++i) group[i] = static_cast<int>(i % 3);
    const auto d = noisy_groups(group, rng);
    const auto sweep = sweep_k(d, 2, 6);
    for (const auto& t : sweep.transitions) {
        ASSERT_EQ(t.flows.size(), t.k);
        std::size_t total = 0;
        for (std::size_t a = 0; a < t.k; ++a) {
            ASSERT_EQ(t.flows[a].size(), t.k + 1);
            std::size_t row = 0;
            for (auto f : t.flows[a]) row += f;
            EXPECT_EQ(row, sweep.at_k(t.k).clustering.sizes()[a]);
            total += row;
        }
        EXPECT_EQ(total, d.size());
        EXPECT_GE(t.nesting, 0.0);
        EXPECT_LE(t.nesting, 1.0);
    }
}

TEST(Sweep, RejectsBadRange) {
    const auto d = grouped({0, 0, 1}, 0.0, 1.0);
    EXPECT_THROW(sweep_k(d, 1, 2), std::invalid_argument);
    EXPECT_THROW(sweep_k(d, 3, 2), std::invalid_argument);
    EXPECT_THROW(sweep_k(d, 2, 4), std::invalid_argument);
}

TEST(Sweep, CsvExports) {
    const auto d = grouped({0, 0, 1}, 0.0, 1.0);
    const auto sweep = sweep_k(d, 2, 3);
    std::ostringstream alluvial, table;
    write_alluvial_csv(alluvial, sweep);
    write_sweep_csv(table, sweep);
    EXPECT_EQ(alluvial.str(), "rollcall_id,k,cluster_id\nr1,2,1\nr2,2,1\nr3,2,2\nr1,3,1\nr2,3,2\nr3,3,3\n");
    EXPECT_EQ(table.str().substr(0, table.str().find('\n')), "k,silhouette,cost,sizes");
}
