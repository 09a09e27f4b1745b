#pragma once

#include "sigvote/pipeline.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace sigvote {

using Json = nlohmann::ordered_json;

Json to_json(const Partition& p);
Partition partition_from_json(const Json& j);

/// Per-layer results, the resumable artifact between solve-layers and the
/// later stages.
Json layers_to_json(const std::vector<LayerResult>& layers);
std::vector<LayerResult> layers_from_json(const Json& j);

/// Clustering over a list of pattern ids; cluster ids are written 1-based.
Json clustering_to_json(const Clustering& c, const std::vector<std::string>& pattern_ids);
Clustering clustering_from_json(const Json& j, const std::vector<std::string>& pattern_ids);

Json sweep_to_json(const SweepReport& sweep);
Json characteristic_to_json(const CharacteristicPattern& cp);
Json measure_scores_to_json(const std::vector<MeasureScore>& scores, std::size_t k_min);

/// Everything except timings, in a fixed key order: identical inputs give a
/// byte-identical dump.
Json report_to_json(const RunReport& report, const RunConfig& config);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// Writes report.json, timings.json, patterns.json, distances.csv,
/// sweep.json, sweep.csv, alluvial.csv, and per cluster
/// cluster_<i>_pattern.json and cluster_<i>_consensus.edgelist into `dir`
/// (created if needed).
void write_run_outputs(const RunReport& report, const RunConfig& config, const std::string& dir);

}  // namespace sigvote
