#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "graphex/localglobal.hpp"
#include "graphex/sampler.hpp"
#include "graphex/stats.hpp"

namespace graphex {

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

nlohmann::json graph_to_json(const SampledGraph& graph);
nlohmann::json stats_to_json(const GraphStats& stats);

std::string nodes_csv(const SampledGraph& graph, const LgSampledGraph* lg = nullptr);
std::string edges_csv(const SampledGraph& graph);

/// Writes nodes.csv, edges.csv, graph.json and stats.json into `dir`.
void write_graph_bundle(const std::filesystem::path& dir, const SampledGraph& graph,
                        const LgSampledGraph* lg = nullptr);

/// Reads nodes.csv and edges.csv from a bundle directory.
SampledGraph read_graph_csv(const std::filesystem::path& dir);

std::string sweep_csv(const SweepResult& sweep);
nlohmann::json sweep_metadata_json(const SweepMetadata& meta);

/// Writes the CSV at `path` and its metadata at `path` + ".meta.json".
void write_sweep(const std::filesystem::path& path, const SweepResult& sweep);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);
std::string read_text(const std::filesystem::path& path);

}  // namespace graphex
