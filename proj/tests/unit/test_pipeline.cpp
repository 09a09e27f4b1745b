#include "sigvote/csv.hpp"
#include "sigvote/error.hpp"
#include "sigvote/pipeline.hpp"
#include "sigvote/report_io.hpp"
#include "sigvote/synthetic.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace sigvote;
using sigvote::testing::TempDir;
using sigvote::testing::read_text;

namespace {

/// Writes a synthetic dataset into `dir` and returns a config pointing at it.
RunConfig synthetic_config(const TempDir& dir, const SyntheticSpec& spec) {
    const auto data = generate_synthetic(spec);
    RunConfig c;
    c.votes_path = dir.file("votes.csv");
    c.voters_path = dir.file("voters.csv");
    c.docs_path = dir.file("docs.csv");
    write_vote_table(data.matrix, c.votes_path, c.voters_path, c.docs_path);
    c.seed = 7;
    c.out_dir = dir.file("out");
    return c;
}

/// Pair-counting ARI of two assignments, computed directly.
double assignment_ari(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    double same_both = 0, same_a = 0, same_b = 0, total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            same_a += a[i] == a[j];
            same_b += b[i] == b[j];
            same_both += a[i] == a[j] && b[i] == b[j];
            total += 1;
        }
    }
    const double expected = same_a * same_b / total, maximum = (same_a + same_b) / 2;
    return (same_both - expected) / (maximum - expected);
}

}  // namespace

TEST(Pipeline, SyntheticRecoversPlantedClusters) {
    TempDir dir;
    const auto spec = default_synthetic_spec(11);
    const auto data = generate_synthetic(spec);
    const auto config = synthetic_config(dir, spec);
    const auto report = run_pipeline(config);
    EXPECT_EQ(report.k_source, "auto");
    EXPECT_EQ(report.chosen_k, 3u);
    ASSERT_EQ(report.patterns.size(), data.truth.size());
    EXPECT_GE(assignment_ari(report.clustering.assignment, data.truth), 0.95);
    ASSERT_EQ(report.characteristic.size(), 3u);
    for (const auto& cp : report.characteristic) EXPECT_TRUE(cp.optimal);
    std::size_t total = 0;
    for (const auto& c : report.clusters) total += c.size;
    EXPECT_EQ(total, report.patterns.size());
}

TEST(Pipeline, SingleRollcallSkipsClustering) {
    TempDir dir;
    auto spec = default_synthetic_spec(2);
    spec.n_rollcalls = 1;
    spec.absence_rate = 0;
    spec.noise_rate = 0;
    const auto config = synthetic_config(dir, spec);
    const auto report = run_pipeline(config);
    EXPECT_EQ(report.k_source, "single-pattern");
    EXPECT_EQ(report.chosen_k, 1u);
    EXPECT_FALSE(report.sweep);
    ASSERT_EQ(report.characteristic.size(), 1u);
    EXPECT_EQ(report.characteristic[0].partition, report.patterns[0].partition);
    EXPECT_DOUBLE_EQ(report.characteristic[0].cost, 0.0);
    EXPECT_FALSE(report.warnings.empty());
}

TEST(Pipeline, UserKOverridesArgmax) {
    TempDir dir;
    auto config = synthetic_config(dir, default_synthetic_spec(5));
    config.k = 4;
    const auto report = run_pipeline(config);
    EXPECT_EQ(report.k_source, "user");
    EXPECT_EQ(report.chosen_k, 4u);
    EXPECT_EQ(report.characteristic.size(), 4u);
}

TEST(Pipeline, ByteIdenticalReports) {
    TempDir dir;
    auto config = synthetic_config(dir, default_synthetic_spec(3));
    config.jobs = 1;
    const auto first = report_to_json(run_pipeline(config), config).dump(2);
    config.jobs = 3;
    const auto second = report_to_json(run_pipeline(config), config).dump(2);
    EXPECT_EQ(first, second);
}

TEST(Pipeline, ResumeFromLayersMatchesFullRun) {
    TempDir dir;
    const auto config = synthetic_config(dir, default_synthetic_spec(9));
    const auto full = run_pipeline(config);
    const auto in = ingest(config);
    const auto layers = layers_from_json(Json::parse(layers_to_json(full.layers).dump()));
    const auto resumed = run_from_patterns(config, in.matrix, layers);
    EXPECT_EQ(report_to_json(resumed, config).dump(), report_to_json(full, config).dump());
}

TEST(Pipeline, StageErrorsNameTheStage) {
    TempDir dir;
    auto config = synthetic_config(dir, default_synthetic_spec(1));
    config.filter.subdomains = {"nothing-here"};
    try {
        run_pipeline(config);
        FAIL() << "expected StageError";
    } catch (const StageError& e) {
        EXPECT_EQ(e.stage(), "ingest");
        EXPECT_NE(std::string(e.what()).find("empty selection"), std::string::npos);
    }
}

TEST(Pipeline, MissingSeedRejected) {
    TempDir dir;
    auto config = synthetic_config(dir, default_synthetic_spec(1));
    config.seed.reset();
    EXPECT_THROW(validate(config), std::invalid_argument);
    EXPECT_NO_THROW(validate(config, false));
}

TEST(Pipeline, WritesOutputFiles) {
    TempDir dir;
    const auto config = synthetic_config(dir, default_synthetic_spec(6));
    const auto report = run_pipeline(config);
    write_run_outputs(report, config, config.out_dir);
    for (const auto* name : {"report.json", "sweep.csv", "alluvial.csv", "cluster_1_pattern.json",
                             "cluster_1_consensus.edgelist", "distances.csv", "patterns.json", "timings.json"}) {
        EXPECT_FALSE(read_text(config.out_dir + "/" + name).empty()) << name;
    }
    const auto j = read_json_file(config.out_dir + "/report.json");
    EXPECT_EQ(j.at("chosen_k").get<std::size_t>(), report.chosen_k);
    EXPECT_EQ(j.at("config").at("votes").get<std::string>(), "votes.csv");
    std::ifstream edges(config.out_dir + "/cluster_1_consensus.edgelist");
    const auto g = read_edgelist(edges, "edgelist");
    EXPECT_EQ(g.nodes(), report.characteristic[0].consensus.graph.nodes());
}

TEST(Pipeline, CompareMeasuresCoversAllFour) {
    TempDir dir;
    auto spec = default_synthetic_spec(8);
    spec.n_rollcalls = 30;
    auto config = synthetic_config(dir, spec);
    config.k_max = 6;
    const auto scores = compare_measures(config);
    ASSERT_EQ(scores.size(), 4u);
    for (const auto& s : scores) {
        EXPECT_EQ(s.silhouettes.size(), 5u);
        EXPECT_GE(s.best_k, 2u);
        EXPECT_LE(s.best_k, 6u);
    }
}

TEST(Config, LoadsIniAndResolvesPaths) {
    TempDir dir;
    const auto path = dir.write("run.ini",
                                "[input]\nvotes = data/votes.csv\nvoters = /abs/voters.csv\ndocs = data/docs.csv\n"
                                "[filter]\ncountries = FR, IT\nsubdomains = AGRI\ndate_from = 2012-01-01\n"
                                "[extract]\nabstention = drop\n"
                                "[solver]\ntime_limit = 5\nnode_limit = 0\n"
                                "[clustering]\nmeasure = nmi\nk = 5\nk_min = 3\nk_max = 9\nrestarts = 4\n"
                                "[characteristic]\nparticipation_threshold = 0.6\n"
                                "[run]\nseed = 42\njobs = 2\nout = results\n");
    const auto c = load_config(path);
    EXPECT_EQ(c.votes_path, dir.file("data/votes.csv"));
    EXPECT_EQ(c.voters_path, "/abs/voters.csv");
    EXPECT_EQ(c.filter.countries, (std::set<std::string>{"FR", "IT"}));
    EXPECT_EQ(c.filter.subdomains, (std::set<std::string>{"AGRI"}));
    ASSERT_TRUE(c.filter.dates);
    EXPECT_EQ(c.filter.dates->from, "2012-01-01");
    EXPECT_EQ(c.abstention, AbstentionPolicy::Drop);
    EXPECT_EQ(c.limits.time_limit, std::chrono::seconds(5));
    EXPECT_FALSE(c.limits.node_limit);
    EXPECT_EQ(c.measure, Measure::Nmi);
    EXPECT_EQ(c.k, 5u);
    EXPECT_EQ(c.k_min, 3u);
    EXPECT_EQ(c.k_max, 9u);
    EXPECT_EQ(c.restarts, 4u);
    EXPECT_DOUBLE_EQ(c.participation_threshold, 0.6);
    EXPECT_EQ(c.seed, 42u);
    EXPECT_EQ(c.jobs, 2u);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
    TempDir dir;
    EXPECT_THROW(load_config(dir.write("a.ini", "[run]\nsead = 1\n")), std::invalid_argument);
    EXPECT_THROW(load_config(dir.write("b.ini", "[clustering]\nmeasure = cosine\n")), std::invalid_argument);
    EXPECT_THROW(load_config(dir.write("c.ini", "[run]\nseed = -3\n")), std::invalid_argument);
    EXPECT_THROW(load_config(dir.write("d.ini", "[characteristic]\nparticipation_threshold = 0\n")),
                 std::invalid_argument);
    const auto defaults = load_config(dir.write("e.ini", "[clustering]\nk = auto\nk_max = all\n"));
    EXPECT_FALSE(defaults.k);
    EXPECT_FALSE(defaults.k_max);
}

TEST(Pipeline, PlantedRecoveryAcrossSeeds) {
    for (std::uint64_t seed = 20; seed < 30; ++seed) {
        TempDir dir;
        const auto data = generate_synthetic(default_synthetic_spec(seed));
        RunConfig config;
        config.votes_path = dir.file("votes.csv");
        config.voters_path = dir.file("voters.csv");
        config.docs_path = dir.file("docs.csv");
        write_vote_table(data.matrix, config.votes_path, config.voters_path, config.docs_path);
        config.seed = seed;
        const auto report = run_pipeline(config);
        EXPECT_EQ(report.chosen_k, 3u) << "seed " << seed;
        EXPECT_GE(assignment_ari(report.clustering.assignment, data.truth), 0.95) << "seed " << seed;
        std::size_t matched = 0;
        for (const auto& cp : report.characteristic) {
            matched += std::count(data.planted.begin(), data.planted.end(), cp.partition) == 1 ? 1 : 0;
        }
        EXPECT_EQ(matched, 3u) << "seed " << seed;
    }
}

TEST(Pipeline, BundledSyntheticDataset) {
    TempDir dir;
    auto config = load_config(std::string(SIGVOTE_BUNDLED_DATA) + "/synthetic/run.ini");
    config.out_dir = dir.file("out");
    const auto report = run_pipeline(config);
    EXPECT_EQ(report.chosen_k, 3u);

    std::ifstream truth_file(std::string(SIGVOTE_BUNDLED_DATA) + "/synthetic/truth.csv");
    const auto rows = csv::read(truth_file, "truth.csv");
    std::map<std::string, std::size_t> names;
    std::map<std::string, std::size_t> truth_of;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        truth_of[rows[r].fields.at(0)] = names.emplace(rows[r].fields.at(1), names.size()).first->second;
    }
    std::vector<std::size_t> truth;
    for (const auto& p : report.patterns) truth.push_back(truth_of.at(p.rollcall_id));
    EXPECT_GE(assignment_ari(report.clustering.assignment, truth), 0.95);
}
