#include "graphex/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "graphex/errors.hpp"

namespace graphex {

namespace fs = std::filesystem;

std::string format_double(double value) { return fmt::format("{}", value); }

nlohmann::json graph_to_json(const SampledGraph& graph) {
  nlohmann::json doc;
  doc["alpha"] = graph.alpha;
  doc["seed"] = graph.seed;
  doc["delta"] = graph.delta;
  doc["v_max"] = graph.v_max;  // null when beyond double range
  doc["log1p_v_max"] = graph.log1p_v_max;
  doc["n_latent"] = graph.n_latent;
  auto nodes = nlohmann::json::array();
  for (const auto& n : graph.nodes) {
    nodes.push_back({{"id", n.id},
                     {"theta", n.theta},
                     {"vartheta", n.vartheta},
                     {"log1p_vartheta", n.log1p_vartheta}});
  }
  doc["nodes"] = std::move(nodes);
  auto edges = nlohmann::json::array();
  for (const auto& e : graph.edges) edges.push_back({e.i, e.j});
  doc["edges"] = std::move(edges);
  return doc;
}

nlohmann::json stats_to_json(const GraphStats& stats) {
  nlohmann::json doc;
  doc["n_nodes"] = stats.n_nodes;
  doc["n_edges"] = stats.n_edges;
  doc["n_self_loops"] = stats.n_self_loops;
  auto hist = nlohmann::json::object();
  for (const auto& [degree, count] : stats.degree_hist) hist[std::to_string(degree)] = count;
  doc["degree_hist"] = std::move(hist);
  doc["sigma_hat"] = stats.sigma_hat ? nlohmann::json(*stats.sigma_hat) : nlohmann::json();
  return doc;
}

std::string nodes_csv(const SampledGraph& graph, const LgSampledGraph* lg) {
  std::string out = lg ? "id,theta,vartheta,v,block\n" : "id,theta,vartheta\n";
  for (std::size_t k = 0; k < graph.nodes.size(); ++k) {
    const Node& n = graph.nodes[k];
    out += fmt::format("{},{},{}", n.id, n.theta, n.vartheta);
    if (lg) out += fmt::format(",{},{}", lg->v[k], lg->block[k]);
    out += '\n';
  }
  return out;
}

std::string edges_csv(const SampledGraph& graph) {
  std::string out = "i,j\n";
  for (const auto& e : graph.edges) out += fmt::format("{},{}\n", e.i, e.j);
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

void write_json(const fs::path& path, const nlohmann::json& doc) {
  write_text(path, doc.dump(2) + "\n");
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_graph_bundle(const fs::path& dir, const SampledGraph& graph,
                        const LgSampledGraph* lg) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  write_text(dir / "nodes.csv", nodes_csv(graph, lg));
  write_text(dir / "edges.csv", edges_csv(graph));
  write_json(dir / "graph.json", graph_to_json(graph));
  write_json(dir / "stats.json", stats_to_json(summarize(graph)));
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

template <class Fn>
void for_each_row(const fs::path& path, std::size_t min_fields, Fn&& fn) {
  std::istringstream in(read_text(path));
  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + " is empty");
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    auto fields = split(line);
    if (fields.size() < min_fields) {
      throw IoError(path.string() + " row " + std::to_string(row) + " is malformed");
    }
    try {
      fn(fields);
    } catch (const std::logic_error&) {
      throw IoError(path.string() + " row " + std::to_string(row) + " is malformed");
    }
  }
}

}  // namespace

SampledGraph read_graph_csv(const fs::path& dir) {
  SampledGraph g;
  for_each_row(dir / "nodes.csv", 3, [&](const std::vector<std::string>& f) {
    Node n;
    n.id = static_cast<std::uint32_t>(std::stoul(f[0]));
    n.theta = std::stod(f[1]);
    n.vartheta = std::stod(f[2]);
    n.log1p_vartheta = std::log1p(n.vartheta);
    if (n.id != g.nodes.size()) throw std::invalid_argument("ids out of order");
    g.nodes.push_back(n);
  });
  for_each_row(dir / "edges.csv", 2, [&](const std::vector<std::string>& f) {
    g.edges.push_back({static_cast<std::uint32_t>(std::stoul(f[0])),
                       static_cast<std::uint32_t>(std::stoul(f[1]))});
  });
  return g;
}

std::string sweep_csv(const SweepResult& sweep) {
  std::string out = "alpha,replicate,seed,n_latent,n_nodes,n_edges,n_self_loops";
  for (std::size_t j = 1; j <= kSweepDegreeColumns; ++j) out += fmt::format(",deg{}", j);
  out += ",sigma_hat\n";
  for (const auto& r : sweep.rows) {
    out += fmt::format("{},{},{},{},{},{},{}", r.alpha, r.replicate, r.seed, r.n_latent,
                       r.n_nodes, r.n_edges, r.n_self_loops);
    for (std::size_t j = 0; j < kSweepDegreeColumns; ++j) {
      out += fmt::format(",{}", j < r.degree_counts.size() ? r.degree_counts[j] : 0);
    }
    out += ',';
    if (r.sigma_hat) out += format_double(*r.sigma_hat);
    out += '\n';
  }
  return out;
}

nlohmann::json sweep_metadata_json(const SweepMetadata& meta) {
  return {{"model_digest", meta.model_digest},
          {"delta", meta.delta},
          {"master_seed", meta.master_seed},
          {"timestamp", meta.timestamp}};
}

void write_sweep(const fs::path& path, const SweepResult& sweep) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string());
  }
  write_text(path, sweep_csv(sweep));
  write_json(fs::path(path.string() + ".meta.json"), sweep_metadata_json(sweep.metadata));
}

}  // namespace graphex
