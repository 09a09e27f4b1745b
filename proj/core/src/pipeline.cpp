#include "sigvote/pipeline.hpp"

#include "sigvote/error.hpp"
#include "sigvote/parallel.hpp"
#include "sigvote/seed.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <set>
#include <stdexcept>

namespace sigvote {

namespace {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
    T value{};
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || p != text.data() + text.size()) {
        throw std::invalid_argument("config key '" + key + "': invalid number '" + text + "'");
    }
    return value;
}

std::set<std::string> parse_list(const std::string& text) {
    std::set<std::string> out;
    std::string item;
    for (char c : text + ";") {
        if (c == ';' || c == ',') {
            auto first = item.find_first_not_of(' ');
            auto last = item.find_last_not_of(' ');
            if (first != std::string::npos) out.insert(item.substr(first, last - first + 1));
            item.clear();
        } else {
            item += c;
        }
    }
    return out;
}

const std::map<std::string, std::set<std::string>> kConfigKeys = {
    {"input", {"votes", "voters", "docs"}},
    {"filter", {"countries", "subdomains", "date_from", "date_to"}},
    {"extract", {"abstention"}},
    {"solver", {"time_limit", "node_limit"}},
    {"clustering", {"measure", "k", "k_min", "k_max", "restarts", "near_tie"}},
    {"characteristic", {"participation_threshold", "abstain_rate", "member_share"}},
    {"run", {"seed", "jobs", "out"}},
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <typename F>
auto stage(const char* name, Timings& timings, F&& body) {
    const auto start = std::chrono::steady_clock::now();
    try {
        if constexpr (std::is_void_v<decltype(body())>) {
            body();
            timings.seconds[name] += seconds_since(start);
        } else {
            auto result = body();
            timings.seconds[name] += seconds_since(start);
            return result;
        }
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

}  // namespace

RunConfig load_config(const std::string& path) {
    pt::ptree tree;
    try {
        pt::read_ini(path, tree);
    } catch (const pt::ini_parser_error& e) {
        throw std::invalid_argument("config: " + std::string(e.what()));
    }
    const fs::path base = fs::path(path).parent_path();
    auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? p : (base / p).string(); };

    RunConfig c;
    for (const auto& [section, entries] : tree) {
        auto known = kConfigKeys.find(section);
        if (known == kConfigKeys.end()) throw std::invalid_argument("config: unknown section [" + section + "]");
        for (const auto& [key, node] : entries) {
            if (!known->second.contains(key)) {
                throw std::invalid_argument("config: unknown key '" + key + "' in [" + section + "]");
            }
        }
    }
    auto get = [&](const std::string& key) { return tree.get_optional<std::string>(pt::ptree::path_type(key, '.')); };

    if (auto v = get("input.votes")) c.votes_path = resolve(*v);
    if (auto v = get("input.voters")) c.voters_path = resolve(*v);
    if (auto v = get("input.docs")) c.docs_path = resolve(*v);
    if (auto v = get("filter.countries")) c.filter.countries = parse_list(*v);
    if (auto v = get("filter.subdomains")) c.filter.subdomains = parse_list(*v);
    auto from = get("filter.date_from");
    auto to = get("filter.date_to");
    if (from || to) c.filter.dates = DateRange{from.value_or(""), to.value_or("")};
    if (auto v = get("extract.abstention")) c.abstention = parse_abstention_policy(*v);
    if (auto v = get("solver.time_limit")) {
        const auto secs = parse_number<double>("solver.time_limit", *v);
        c.limits.time_limit = secs > 0 ? std::optional(std::chrono::duration<double>(secs)) : std::nullopt;
    }
    if (auto v = get("solver.node_limit")) {
        const auto nodes = parse_number<std::uint64_t>("solver.node_limit", *v);
        c.limits.node_limit = nodes > 0 ? std::optional(nodes) : std::nullopt;
    }
    if (auto v = get("clustering.measure")) c.measure = parse_measure(*v);
    if (auto v = get("clustering.k"); v && *v != "auto") c.k = parse_number<std::size_t>("clustering.k", *v);
    if (auto v = get("clustering.k_min")) c.k_min = parse_number<std::size_t>("clustering.k_min", *v);
    if (auto v = get("clustering.k_max"); v && *v != "all") {
        c.k_max = parse_number<std::size_t>("clustering.k_max", *v);
    }
    if (auto v = get("clustering.restarts")) c.restarts = parse_number<std::size_t>("clustering.restarts", *v);
    if (auto v = get("clustering.near_tie")) c.near_tie = parse_number<double>("clustering.near_tie", *v);
    if (auto v = get("characteristic.participation_threshold")) {
        c.participation_threshold = parse_number<double>("characteristic.participation_threshold", *v);
    }
    if (auto v = get("characteristic.abstain_rate")) {
        c.abstention_thresholds.abstain_rate = parse_number<double>("characteristic.abstain_rate", *v);
    }
    if (auto v = get("characteristic.member_share")) {
        c.abstention_thresholds.member_share = parse_number<double>("characteristic.member_share", *v);
    }
    if (auto v = get("run.seed")) c.seed = parse_number<std::uint64_t>("run.seed", *v);
    if (auto v = get("run.jobs")) c.jobs = parse_number<unsigned>("run.jobs", *v);
    if (auto v = get("run.out")) c.out_dir = resolve(*v);
    validate(c, false);
    return c;
}

void validate(const RunConfig& c, bool require_inputs) {
    if (require_inputs) {
        if (c.votes_path.empty() || c.voters_path.empty() || c.docs_path.empty()) {
            throw std::invalid_argument("input.votes, input.voters and input.docs are required");
        }
        if (!c.seed) throw std::invalid_argument("a seed is required (run.seed or --seed)");
    }
    if (c.k && *c.k == 0) throw std::invalid_argument("k must be >= 1");
    if (c.k_min < 2) throw std::invalid_argument("k_min must be >= 2");
    if (c.k_max && *c.k_max < c.k_min) throw std::invalid_argument("k_max must be >= k_min");
    if (c.restarts == 0) throw std::invalid_argument("restarts must be >= 1");
    if (!(c.participation_threshold > 0 && c.participation_threshold <= 1)) {
        throw std::invalid_argument("participation_threshold must be in (0, 1]");
    }
    for (double x : {c.abstention_thresholds.abstain_rate, c.abstention_thresholds.member_share}) {
        if (!(x >= 0 && x < 1)) throw std::invalid_argument("abstention thresholds must be in [0, 1)");
    }
    if (!(c.near_tie >= 0)) throw std::invalid_argument("near_tie must be >= 0");
    if (c.jobs == 0) throw std::invalid_argument("jobs must be >= 1");
}

IngestStage ingest(const RunConfig& config) {
    auto parsed = parse_vote_table(config.votes_path, config.voters_path, config.docs_path);
    IngestStage out;
    out.warnings = std::move(parsed.warnings);
    out.matrix = config.filter.empty() ? std::move(parsed.matrix) : filter_matrix(parsed.matrix, config.filter);
    return out;
}

std::vector<LayerResult> solve_layers(const MultiplexGraph& multiplex, const SolveLimits& limits, unsigned jobs) {
    std::vector<LayerResult> results(multiplex.layers.size());
    parallel_for(results.size(), jobs, [&](std::size_t i) {
        const auto& layer = multiplex.layers[i];
        LayerResult r;
        r.rollcall_id = layer.rollcall_id();
        r.participants = layer.size();
        r.degenerate = layer.degenerate();
        if (!r.degenerate) r.solution = solve_exact(layer.to_graph(), limits);
        results[i] = std::move(r);
    });
    return results;
}

std::vector<Pattern> patterns_from_layers(const std::vector<LayerResult>& layers) {
    std::vector<Pattern> out;
    for (const auto& l : layers) {
        if (!l.degenerate && l.solution) out.push_back(Pattern{l.rollcall_id, l.solution->partition});
    }
    return out;
}

ClusterStage cluster_patterns(const RunConfig& config, const DissimilarityMatrix& d, Timings& timings) {
    const auto n = d.size();
    ClusterStage out;
    const std::size_t k_max = std::min(config.k_max.value_or(n), n);
    const KMedoidsOptions kopts{derive_seed(config.seed.value_or(0), "kmedoids"), config.restarts};
    if (config.k_min <= k_max) {
        out.sweep = stage("sweep", timings, [&] { return sweep_k(d, config.k_min, k_max, kopts, config.jobs); });
        const auto best = out.sweep->best_k();
        const double best_s = out.sweep->at_k(best).silhouette;
        for (const auto& e : out.sweep->entries) {
            if (e.clustering.k != best && best_s - e.silhouette <= config.near_tie) out.near_ties.push_back(e.clustering.k);
        }
        out.chosen_k = best;
    } else {
        out.warnings.push_back("k sweep range is empty");
        out.chosen_k = 1;
    }
    out.k_source = "auto";
    if (config.k) {
        if (*config.k > n) {
            throw StageError("cluster", "k = " + std::to_string(*config.k) + " exceeds the " + std::to_string(n) +
                                            " patterns");
        }
        out.chosen_k = *config.k;
        out.k_source = "user";
    }
    const auto k = out.chosen_k;
    if (out.sweep && k >= out.sweep->k_min && k - out.sweep->k_min < out.sweep->entries.size()) {
        out.clustering = out.sweep->at_k(k).clustering;
    } else {
        out.clustering = stage("cluster", timings, [&] { return k_medoids(d, k, kopts); });
    }
    return out;
}

std::vector<CharacteristicPattern> characterize_clusters(const RunConfig& config, const VoteMatrix& matrix,
                                                         const std::vector<Pattern>& patterns,
                                                         const Clustering& clustering) {
    std::vector<std::string> voter_order;
    for (const auto& v : matrix.voters()) voter_order.push_back(v.id);
    CharacteristicOptions copts{config.limits, config.participation_threshold, voter_order};
    std::vector<CharacteristicPattern> out(clustering.k);
    parallel_for(clustering.k, config.jobs, [&](std::size_t c) {
        std::vector<Pattern> members;
        for (auto p : clustering.members(c)) members.push_back(patterns.at(p));
        auto cp = characteristic_pattern(c + 1, members, copts);
        cp.factions = summarize_pattern(cp, matrix, config.abstention_thresholds);
        out[c] = std::move(cp);
    });
    return out;
}

RunReport run_from_patterns(const RunConfig& config, const VoteMatrix& matrix, std::vector<LayerResult> layers) {
    validate(config, false);
    RunReport report;
    report.layers = std::move(layers);
    report.patterns = patterns_from_layers(report.layers);
    for (const auto& l : report.layers) {
        if (l.degenerate) report.warnings.push_back("layer " + l.rollcall_id + " is degenerate and was skipped");
        if (l.solution && !l.solution->optimal) {
            report.warnings.push_back("layer " + l.rollcall_id + " hit the solver limits; pattern is not certified");
        }
    }
    const auto n = report.patterns.size();
    if (n == 0) throw StageError("cluster", "no non-degenerate layer to cluster");

    if (n == 1) {
        report.warnings.push_back("single pattern: clustering skipped");
        report.chosen_k = 1;
        report.k_source = "single-pattern";
        report.clustering = Clustering{1, {0}, {0}, 0.0};
    } else {
        std::vector<DissimilarityWarning> dw;
        report.distances = stage("distances", report.timings, [&] {
            return dissimilarity_matrix(report.patterns, config.measure, &dw, config.jobs);
        });
        for (const auto& w : dw) report.warnings.push_back(w.first + " vs " + w.second + ": " + w.message);

        auto chosen = cluster_patterns(config, *report.distances, report.timings);
        report.sweep = std::move(chosen.sweep);
        report.chosen_k = chosen.chosen_k;
        report.k_source = std::move(chosen.k_source);
        report.near_ties = std::move(chosen.near_ties);
        report.clustering = std::move(chosen.clustering);
        report.warnings.insert(report.warnings.end(), chosen.warnings.begin(), chosen.warnings.end());
    }

    for (std::size_t c = 0; c < report.clustering.k; ++c) {
        ClusterSummary s;
        s.id = c + 1;
        for (auto p : report.clustering.members(c)) s.rollcall_ids.push_back(report.patterns[p].rollcall_id);
        s.size = s.rollcall_ids.size();
        s.proportion = static_cast<double>(s.size) / static_cast<double>(n);
        s.medoid = report.patterns[report.clustering.medoids[c]].rollcall_id;
        report.clusters.push_back(std::move(s));
    }

    report.characteristic = stage("characterize", report.timings, [&] {
        return characterize_clusters(config, matrix, report.patterns, report.clustering);
    });
    for (const auto& cp : report.characteristic) {
        if (cp.heuristic_fallback) {
            report.warnings.push_back("cluster " + std::to_string(cp.cluster_id) +
                                      ": exact solve hit its limits; characteristic pattern is heuristic");
        }
    }
    return report;
}

RunReport run_pipeline(const RunConfig& config) {
    try {
        validate(config, true);
    } catch (const std::invalid_argument& e) {
        throw StageError("config", e.what());
    }
    Timings timings;
    auto in = stage("ingest", timings, [&] { return ingest(config); });
    auto multiplex = stage("extract", timings, [&] { return extract_multiplex(in.matrix, config.abstention); });
    auto layers = stage("solve-layers", timings, [&] { return solve_layers(multiplex, config.limits, config.jobs); });
    auto report = run_from_patterns(config, in.matrix, std::move(layers));
    for (const auto& [k, v] : timings.seconds) report.timings.seconds[k] += v;
    report.warnings.insert(report.warnings.begin(), in.warnings.begin(), in.warnings.end());
    return report;
}

std::vector<MeasureScore> compare_measures(const RunConfig& config, const std::vector<Pattern>& patterns) {
    const auto n = patterns.size();
    if (n < 3) throw std::invalid_argument("comparing measures needs at least three patterns");
    const std::size_t k_max = std::min(config.k_max.value_or(n), n);
    const KMedoidsOptions kopts{derive_seed(config.seed.value_or(0), "kmedoids"), config.restarts};
    std::vector<MeasureScore> out;
    for (auto m : kAllMeasures) {
        const auto d = dissimilarity_matrix(patterns, m, nullptr, config.jobs);
        const auto sweep = sweep_k(d, config.k_min, k_max, kopts, config.jobs);
        MeasureScore s;
        s.measure = m;
        s.best_k = sweep.best_k();
        s.best_silhouette = sweep.at_k(s.best_k).silhouette;
        for (const auto& e : sweep.entries) s.silhouettes.push_back(e.silhouette);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<MeasureScore> compare_measures(const RunConfig& config) {
    validate(config, true);
    Timings timings;
    auto in = stage("ingest", timings, [&] { return ingest(config); });
    auto multiplex = stage("extract", timings, [&] { return extract_multiplex(in.matrix, config.abstention); });
    auto layers = stage("solve-layers", timings, [&] { return solve_layers(multiplex, config.limits, config.jobs); });
    return stage("compare-measures", timings, [&] { return compare_measures(config, patterns_from_layers(layers)); });
}

}  // namespace sigvote
