#include "sigvote/report_io.hpp"

#include "sigvote/error.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace sigvote {

namespace fs = std::filesystem;

Json to_json(const Partition& p) {
    Json blocks = Json::array();
    for (const auto& b : p.blocks()) blocks.push_back(b);
    return blocks;
}

Partition partition_from_json(const Json& j) {
    return Partition(j.get<std::vector<std::vector<std::string>>>());
}

Json layers_to_json(const std::vector<LayerResult>& layers) {
    Json out = Json::array();
    for (const auto& l : layers) {
        Json e;
        e["rollcall_id"] = l.rollcall_id;
        e["participants"] = l.participants;
        e["degenerate"] = l.degenerate;
        if (l.solution) {
            e["factions"] = to_json(l.solution->partition);
            e["cost"] = l.solution->cost;
            e["optimal"] = l.solution->optimal;
            e["nodes_explored"] = l.solution->nodes_explored;
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<LayerResult> layers_from_json(const Json& j) {
    std::vector<LayerResult> out;
    for (const auto& e : j) {
        LayerResult l;
        l.rollcall_id = e.at("rollcall_id").get<std::string>();
        l.participants = e.at("participants").get<std::size_t>();
        l.degenerate = e.at("degenerate").get<bool>();
        if (e.contains("factions")) {
            CCSolution s;
            s.partition = partition_from_json(e.at("factions"));
            s.cost = e.at("cost").get<double>();
            s.optimal = e.at("optimal").get<bool>();
            s.nodes_explored = e.at("nodes_explored").get<std::uint64_t>();
            l.solution = std::move(s);
        }
        out.push_back(std::move(l));
    }
    return out;
}

Json clustering_to_json(const Clustering& c, const std::vector<std::string>& pattern_ids) {
    Json j;
    j["k"] = c.k;
    j["cost"] = c.cost;
    Json medoids = Json::array();
    for (auto m : c.medoids) medoids.push_back(pattern_ids.at(m));
    j["medoids"] = std::move(medoids);
    Json assignment = Json::object();
    for (std::size_t p = 0; p < c.assignment.size(); ++p) assignment[pattern_ids.at(p)] = c.assignment[p] + 1;
    j["assignment"] = std::move(assignment);
    return j;
}

Clustering clustering_from_json(const Json& j, const std::vector<std::string>& pattern_ids) {
    Clustering c;
    c.k = j.at("k").get<std::size_t>();
    c.cost = j.at("cost").get<double>();
    auto position = [&](const std::string& id) {
        for (std::size_t p = 0; p < pattern_ids.size(); ++p) {
            if (pattern_ids[p] == id) return p;
        }
        throw std::invalid_argument("clustering refers to unknown pattern '" + id + "'");
    };
    for (const auto& m : j.at("medoids")) c.medoids.push_back(position(m.get<std::string>()));
    c.assignment.assign(pattern_ids.size(), c.k);
    for (const auto& [id, cluster] : j.at("assignment").items()) {
        const auto value = cluster.get<std::size_t>();
        if (value < 1 || value > c.k) throw std::invalid_argument("cluster id out of range for '" + id + "'");
        c.assignment[position(id)] = value - 1;
    }
    for (auto a : c.assignment) {
        if (a == c.k) throw std::invalid_argument("clustering does not assign every pattern");
    }
    if (c.medoids.size() != c.k) throw std::invalid_argument("clustering needs one medoid per cluster");
    return c;
}

Json sweep_to_json(const SweepReport& sweep) {
    Json j;
    j["k_min"] = sweep.k_min;
    j["best_k"] = sweep.best_k();
    Json entries = Json::array();
    for (const auto& e : sweep.entries) {
        Json x;
        x["k"] = e.clustering.k;
        x["silhouette"] = e.silhouette;
        x["clustering"] = clustering_to_json(e.clustering, sweep.pattern_ids);
        x["sizes"] = e.clustering.sizes();
        entries.push_back(std::move(x));
    }
    j["entries"] = std::move(entries);
    Json transitions = Json::array();
    for (const auto& t : sweep.transitions) {
        Json x;
        x["from_k"] = t.k;
        x["to_k"] = t.k + 1;
        x["nesting"] = t.nesting;
        x["flows"] = t.flows;
        transitions.push_back(std::move(x));
    }
    j["transitions"] = std::move(transitions);
    return j;
}

Json characteristic_to_json(const CharacteristicPattern& cp) {
    Json j;
    j["cluster_id"] = cp.cluster_id;
    j["rollcalls"] = cp.rollcall_ids;
    j["factions"] = to_json(cp.partition);
    j["excluded"] = cp.excluded;
    j["cost"] = cp.cost;
    j["optimal"] = cp.optimal;
    j["heuristic_fallback"] = cp.heuristic_fallback;
    j["nodes_explored"] = cp.nodes_explored;
    Json summaries = Json::array();
    for (std::size_t f = 0; f < cp.factions.size(); ++f) {
        const auto& s = cp.factions[f];
        Json x;
        x["faction"] = f + 1;
        x["size"] = s.size;
        x["groups"] = s.groups;
        x["abstainers"] = s.abstainers;
        x["abstentionist"] = s.abstentionist;
        summaries.push_back(std::move(x));
    }
    j["faction_summaries"] = std::move(summaries);
    return j;
}

Json measure_scores_to_json(const std::vector<MeasureScore>& scores, std::size_t k_min) {
    Json out = Json::array();
    for (const auto& s : scores) {
        Json x;
        x["measure"] = std::string(to_string(s.measure));
        x["best_k"] = s.best_k;
        x["best_silhouette"] = s.best_silhouette;
        x["k_min"] = k_min;
        x["silhouettes"] = s.silhouettes;
        out.push_back(std::move(x));
    }
    return out;
}

Json report_to_json(const RunReport& report, const RunConfig& config) {
    Json j;
    Json cfg;
    cfg["votes"] = fs::path(config.votes_path).filename().string();
    cfg["voters"] = fs::path(config.voters_path).filename().string();
    cfg["docs"] = fs::path(config.docs_path).filename().string();
    cfg["countries"] = config.filter.countries;
    cfg["subdomains"] = config.filter.subdomains;
    if (config.filter.dates) {
        cfg["date_from"] = config.filter.dates->from;
        cfg["date_to"] = config.filter.dates->to;
    }
    cfg["abstention"] = std::string(to_string(config.abstention));
    cfg["measure"] = std::string(to_string(config.measure));
    cfg["k"] = config.k ? Json(*config.k) : Json("auto");
    cfg["k_min"] = config.k_min;
    cfg["k_max"] = config.k_max ? Json(*config.k_max) : Json("all");
    cfg["seed"] = config.seed.value_or(0);
    cfg["restarts"] = config.restarts;
    cfg["time_limit"] = config.limits.time_limit ? Json(config.limits.time_limit->count()) : Json(nullptr);
    cfg["node_limit"] = config.limits.node_limit ? Json(*config.limits.node_limit) : Json(nullptr);
    cfg["participation_threshold"] = config.participation_threshold;
    j["config"] = std::move(cfg);

    std::size_t degenerate = 0;
    for (const auto& l : report.layers) degenerate += l.degenerate ? 1 : 0;
    j["n_layers"] = report.layers.size();
    j["n_patterns"] = report.patterns.size();
    j["n_degenerate"] = degenerate;
    j["layers"] = layers_to_json(report.layers);
    if (report.sweep) {
        Json sil = Json::array();
        for (const auto& e : report.sweep->entries) sil.push_back({{"k", e.clustering.k}, {"silhouette", e.silhouette}});
        j["silhouettes"] = std::move(sil);
    }
    j["chosen_k"] = report.chosen_k;
    j["k_source"] = report.k_source;
    j["near_ties"] = report.near_ties;

    Json clusters = Json::array();
    for (const auto& c : report.clusters) {
        Json x;
        x["cluster_id"] = c.id;
        x["size"] = c.size;
        x["proportion"] = c.proportion;
        x["medoid"] = c.medoid;
        x["rollcalls"] = c.rollcall_ids;
        clusters.push_back(std::move(x));
    }
    j["clusters"] = std::move(clusters);
    Json characteristic = Json::array();
    for (const auto& cp : report.characteristic) characteristic.push_back(characteristic_to_json(cp));
    j["characteristic_patterns"] = std::move(characteristic);
    j["warnings"] = report.warnings;
    return j;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path, 0, e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

void write_run_outputs(const RunReport& report, const RunConfig& config, const std::string& dir) {
    fs::create_directories(dir);
    const fs::path base(dir);
    auto open = [&](const std::string& name) {
        std::ofstream out(base / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + (base / name).string());
        return out;
    };
    write_json_file((base / "report.json").string(), report_to_json(report, config));
    write_json_file((base / "timings.json").string(), Json(report.timings.seconds));
    write_json_file((base / "patterns.json").string(), layers_to_json(report.layers));
    if (report.distances) {
        auto out = open("distances.csv");
        write_dissimilarity_csv(out, *report.distances);
    }
    if (report.sweep) {
        write_json_file((base / "sweep.json").string(), sweep_to_json(*report.sweep));
        auto sweep_csv = open("sweep.csv");
        write_sweep_csv(sweep_csv, *report.sweep);
        auto alluvial = open("alluvial.csv");
        write_alluvial_csv(alluvial, *report.sweep);
    }
    for (const auto& cp : report.characteristic) {
        const auto i = std::to_string(cp.cluster_id);
        write_json_file((base / ("cluster_" + i + "_pattern.json")).string(), characteristic_to_json(cp));
        auto edges = open("cluster_" + i + "_consensus.edgelist");
        edges << "# consensus graph of cluster " << i << '\n';
        write_edgelist(edges, cp.consensus.graph);
    }
}

}  // namespace sigvote
