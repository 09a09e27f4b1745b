// sigvote command line: run the whole analysis or any single stage of it.

#include "sigvote/error.hpp"
#include "sigvote/multiplex.hpp"
#include "sigvote/pipeline.hpp"
#include "sigvote/report_io.hpp"
#include "sigvote/synthetic.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace sigvote;

namespace {

struct Common {
    std::string config;
    std::string votes, voters, docs;
    std::vector<std::string> countries, subdomains;
    std::string measure, k, abstention, out;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> jobs;
    std::optional<double> time_limit;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--config", c.config, "INI run configuration")->check(CLI::ExistingFile);
    sub->add_option("--votes", c.votes, "votes.csv (overrides the config)");
    sub->add_option("--voters", c.voters, "voters.csv (overrides the config)");
    sub->add_option("--docs", c.docs, "docs.csv (overrides the config)");
    sub->add_option("--country", c.countries, "keep voters from these countries");
    sub->add_option("--subdomain", c.subdomains, "keep roll-calls tagged with these subdomains");
    sub->add_option("--measure", c.measure, "purity | ri | ari | nmi");
    sub->add_option("--k", c.k, "number of clusters, or 'auto'");
    sub->add_option("--seed", c.seed, "run seed");
    sub->add_option("--abstention", c.abstention, "keep | drop");
    sub->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", c.out, "output directory");
    sub->add_option("--time-limit", c.time_limit, "per-solve time limit in seconds (0 = none)")
        ->check(CLI::NonNegativeNumber);
}

RunConfig make_config(const Common& c) {
    RunConfig config = c.config.empty() ? RunConfig{} : load_config(c.config);
    if (!c.votes.empty()) config.votes_path = c.votes;
    if (!c.voters.empty()) config.voters_path = c.voters;
    if (!c.docs.empty()) config.docs_path = c.docs;
    if (!c.countries.empty()) config.filter.countries = {c.countries.begin(), c.countries.end()};
    if (!c.subdomains.empty()) config.filter.subdomains = {c.subdomains.begin(), c.subdomains.end()};
    if (!c.measure.empty()) config.measure = parse_measure(c.measure);
    if (!c.k.empty()) {
        if (c.k == "auto") {
            config.k.reset();
        } else {
            std::size_t used = 0;
            const auto k = std::stoull(c.k, &used);
            if (used != c.k.size() || k == 0) throw std::invalid_argument("--k must be a positive integer or 'auto'");
            config.k = k;
        }
    }
    if (c.seed) config.seed = *c.seed;
    if (!c.abstention.empty()) config.abstention = parse_abstention_policy(c.abstention);
    if (c.jobs) config.jobs = *c.jobs;
    if (!c.out.empty()) config.out_dir = c.out;
    if (c.time_limit) {
        config.limits.time_limit =
            *c.time_limit > 0 ? std::optional(std::chrono::duration<double>(*c.time_limit)) : std::nullopt;
    }
    return config;
}

std::ofstream open_out(const fs::path& path) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

std::vector<LayerResult> solved_layers(const RunConfig& config, const VoteMatrix& matrix) {
    return solve_layers(extract_multiplex(matrix, config.abstention), config.limits, config.jobs);
}

std::vector<std::string> ids_of(const std::vector<Pattern>& patterns) {
    std::vector<std::string> ids;
    for (const auto& p : patterns) ids.push_back(p.rollcall_id);
    return ids;
}

int cmd_extract(const RunConfig& config) {
    validate(config, true);
    const auto in = ingest(config);
    print_warnings(in.warnings);
    const auto multiplex = extract_multiplex(in.matrix, config.abstention);
    const fs::path out(config.out_dir);
    auto graphml = open_out(out / "multiplex.graphml");
    write_graphml(graphml, multiplex);
    std::size_t degenerate = 0;
    for (const auto& layer : multiplex.layers) {
        auto edges = open_out(out / "layers" / (layer.rollcall_id() + ".edgelist"));
        write_layer_edgelist(edges, layer);
        degenerate += layer.degenerate() ? 1 : 0;
    }
    std::cout << multiplex.voters.size() << " voters, " << multiplex.layers.size() << " layers (" << degenerate
              << " degenerate) -> " << out.string() << '\n';
    return 0;
}

int cmd_solve_layers(const RunConfig& config) {
    validate(config, true);
    const auto in = ingest(config);
    print_warnings(in.warnings);
    const auto layers = solved_layers(config, in.matrix);
    fs::create_directories(config.out_dir);
    write_json_file((fs::path(config.out_dir) / "patterns.json").string(), layers_to_json(layers));
    std::size_t uncertified = 0;
    for (const auto& l : layers) uncertified += l.solution && !l.solution->optimal ? 1 : 0;
    std::cout << layers.size() << " layers solved, " << uncertified << " not certified optimal\n";
    return 0;
}

std::vector<Pattern> load_or_solve_patterns(const RunConfig& config, const std::string& patterns_file) {
    if (!patterns_file.empty()) return patterns_from_layers(layers_from_json(read_json_file(patterns_file)));
    validate(config, true);
    const auto in = ingest(config);
    print_warnings(in.warnings);
    return patterns_from_layers(solved_layers(config, in.matrix));
}

int cmd_distances(const RunConfig& config, const std::string& patterns_file) {
    const auto patterns = load_or_solve_patterns(config, patterns_file);
    std::vector<DissimilarityWarning> warnings;
    const auto d = dissimilarity_matrix(patterns, config.measure, &warnings, config.jobs);
    for (const auto& w : warnings) std::cerr << "warning: " << w.first << " vs " << w.second << ": " << w.message << '\n';
    auto out = open_out(fs::path(config.out_dir) / "distances.csv");
    write_dissimilarity_csv(out, d);
    std::cout << d.size() << " patterns, measure " << to_string(config.measure) << '\n';
    return 0;
}

int cmd_cluster(const RunConfig& config, const std::string& distances_file, const std::string& patterns_file) {
    validate(config, false);
    DissimilarityMatrix d;
    if (!distances_file.empty()) {
        std::ifstream in(distances_file);
        if (!in) throw ParseError(distances_file, 0, "cannot open file");
        d = read_dissimilarity_csv(in, distances_file);
    } else {
        d = dissimilarity_matrix(load_or_solve_patterns(config, patterns_file), config.measure, nullptr, config.jobs);
    }
    Timings timings;
    const auto chosen = cluster_patterns(config, d, timings);
    print_warnings(chosen.warnings);
    const fs::path out(config.out_dir);
    fs::create_directories(out);
    if (chosen.sweep) {
        write_json_file((out / "sweep.json").string(), sweep_to_json(*chosen.sweep));
        auto sweep_csv = open_out(out / "sweep.csv");
        write_sweep_csv(sweep_csv, *chosen.sweep);
        auto alluvial = open_out(out / "alluvial.csv");
        write_alluvial_csv(alluvial, *chosen.sweep);
        for (const auto& e : chosen.sweep->entries) {
            std::cout << "k=" << e.clustering.k << " silhouette=" << format_real(e.silhouette) << '\n';
        }
    }
    write_json_file((out / "clustering.json").string(), clustering_to_json(chosen.clustering, d.ids()));
    std::cout << "chosen k=" << chosen.chosen_k << " (" << chosen.k_source << ")";
    if (!chosen.near_ties.empty()) {
        std::cout << ", near ties:";
        for (auto k : chosen.near_ties) std::cout << ' ' << k;
    }
    std::cout << '\n';
    return 0;
}

int cmd_characterize(const RunConfig& config, const std::string& patterns_file, const std::string& clustering_file) {
    validate(config, true);
    const auto in = ingest(config);
    print_warnings(in.warnings);
    const auto patterns = patterns_file.empty() ? patterns_from_layers(solved_layers(config, in.matrix))
                                                : patterns_from_layers(layers_from_json(read_json_file(patterns_file)));
    const auto clustering = clustering_from_json(read_json_file(clustering_file), ids_of(patterns));
    const auto cps = characterize_clusters(config, in.matrix, patterns, clustering);
    const fs::path out(config.out_dir);
    fs::create_directories(out);
    for (const auto& cp : cps) {
        const auto i = std::to_string(cp.cluster_id);
        write_json_file((out / ("cluster_" + i + "_pattern.json")).string(), characteristic_to_json(cp));
        auto edges = open_out(out / ("cluster_" + i + "_consensus.edgelist"));
        write_edgelist(edges, cp.consensus.graph);
        std::cout << "cluster " << i << ": " << cp.rollcall_ids.size() << " roll-calls, " << cp.partition.n_blocks()
                  << " factions, cost " << format_real(cp.cost) << (cp.optimal ? "" : " (not certified)") << '\n';
    }
    return 0;
}

int cmd_run(const RunConfig& config) {
    const auto report = run_pipeline(config);
    print_warnings(report.warnings);
    write_run_outputs(report, config, config.out_dir);
    std::cout << report.patterns.size() << " patterns, k=" << report.chosen_k << " (" << report.k_source << ")\n";
    for (const auto& c : report.clusters) {
        const auto& cp = report.characteristic[c.id - 1];
        std::cout << "cluster " << c.id << ": " << c.size << " roll-calls (" << format_real(c.proportion) << "), "
                  << cp.partition.n_blocks() << " factions\n";
    }
    std::cout << "report written to " << (fs::path(config.out_dir) / "report.json").string() << '\n';
    return 0;
}

int cmd_compare(const RunConfig& config) {
    const auto scores = compare_measures(config);
    fs::create_directories(config.out_dir);
    write_json_file((fs::path(config.out_dir) / "measures.json").string(), measure_scores_to_json(scores, config.k_min));
    std::cout << "measure,best_k,best_silhouette\n";
    for (const auto& s : scores) {
        std::cout << to_string(s.measure) << ',' << s.best_k << ',' << format_real(s.best_silhouette) << '\n';
    }
    return 0;
}

struct SynthOptions {
    std::size_t voters = 40;
    std::size_t rollcalls = 60;
    double noise = 0.05;
    double absence = 0.10;
};

int cmd_synth(const Common& c, const SynthOptions& o) {
    if (!c.seed) throw std::invalid_argument("synth needs --seed");
    auto spec = default_synthetic_spec(*c.seed);
    spec.n_rollcalls = o.rollcalls;
    spec.noise_rate = o.noise;
    spec.absence_rate = o.absence;
    if (o.voters != spec.n_voters) {
        // rescale the planted factions onto the requested electorate
        for (auto& p : spec.patterns) {
            std::vector<int> f(o.voters);
            for (std::size_t i = 0; i < o.voters; ++i) f[i] = p.factions[i * spec.n_voters / o.voters];
            p.factions = std::move(f);
        }
        std::vector<std::string> groups(o.voters);
        for (std::size_t i = 0; i < o.voters; ++i) groups[i] = spec.groups[i * spec.n_voters / o.voters];
        spec.groups = std::move(groups);
        spec.n_voters = o.voters;
    }
    const auto data = generate_synthetic(spec);
    const fs::path out(c.out.empty() ? "synthetic" : c.out);
    fs::create_directories(out);
    write_vote_table(data.matrix, (out / "votes.csv").string(), (out / "voters.csv").string(),
                     (out / "docs.csv").string());
    auto truth = open_out(out / "truth.csv");
    truth << "rollcall_id,pattern\n";
    for (std::size_t j = 0; j < data.truth.size(); ++j) {
        truth << data.matrix.rollcalls()[j].rollcall_id << ',' << spec.patterns[data.truth[j]].name << '\n';
    }
    auto ini = open_out(out / "run.ini");
    ini << "[input]\nvotes = votes.csv\nvoters = voters.csv\ndocs = docs.csv\n\n[run]\nseed = " << *c.seed
        << "\nout = out\n";
    std::cout << spec.n_voters << " voters x " << spec.n_rollcalls << " roll-calls -> " << out.string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Voting-pattern analysis of signed roll-call networks"};
    app.require_subcommand(1);

    Common common;
    std::string patterns_file, distances_file, clustering_file;
    SynthOptions synth;

    auto* extract = app.add_subcommand("extract", "write one signed layer per roll-call");
    auto* solve = app.add_subcommand("solve-layers", "solve Correlation Clustering on every layer");
    auto* distances = app.add_subcommand("distances", "pattern-vs-pattern dissimilarity matrix");
    auto* cluster = app.add_subcommand("cluster", "k-medoids sweep and clustering of the patterns");
    auto* characterize = app.add_subcommand("characterize", "characteristic pattern of every cluster");
    auto* run = app.add_subcommand("run", "full pipeline");
    auto* gen = app.add_subcommand("synth", "generate a synthetic dataset with planted patterns");
    auto* compare = app.add_subcommand("compare-measures", "silhouette sweep under all four measures");
    for (auto* sub : {extract, solve, distances, cluster, characterize, run, gen, compare}) add_common(sub, common);

    distances->add_option("--patterns", patterns_file, "patterns.json from solve-layers")->check(CLI::ExistingFile);
    cluster->add_option("--distances", distances_file, "distances.csv from distances")->check(CLI::ExistingFile);
    cluster->add_option("--patterns", patterns_file, "patterns.json from solve-layers")->check(CLI::ExistingFile);
    characterize->add_option("--patterns", patterns_file, "patterns.json from solve-layers")->check(CLI::ExistingFile);
    characterize->add_option("--clustering", clustering_file, "clustering.json from cluster")
        ->check(CLI::ExistingFile)
        ->required();
    gen->add_option("--n-voters", synth.voters, "number of voters")->check(CLI::Range(3, 100000));
    gen->add_option("--n-rollcalls", synth.rollcalls, "number of roll-calls")->check(CLI::Range(1, 1000000));
    gen->add_option("--noise", synth.noise, "vote noise rate")->check(CLI::Range(0.0, 1.0));
    gen->add_option("--absence", synth.absence, "absence rate")->check(CLI::Range(0.0, 1.0));

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_synth(common, synth);
        const auto config = make_config(common);
        if (extract->parsed()) return cmd_extract(config);
        if (solve->parsed()) return cmd_solve_layers(config);
        if (distances->parsed()) return cmd_distances(config, patterns_file);
        if (cluster->parsed()) return cmd_cluster(config, distances_file, patterns_file);
        if (characterize->parsed()) return cmd_characterize(config, patterns_file, clustering_file);
        if (run->parsed()) return cmd_run(config);
        if (compare->parsed()) return cmd_compare(config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
