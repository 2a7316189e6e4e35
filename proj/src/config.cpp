#include "graphex/config.hpp"

#include <fstream>
#include <set>

#include <fmt/format.h>

#include "graphex/errors.hpp"

namespace graphex {

namespace {

double number_field(const nlohmann::json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number()) throw ValidationError(std::string(key) + " must be a number");
  return v.get<double>();
}

}  // namespace

ModelConfig parse_model_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ValidationError("model config must be a JSON object");
  static const std::set<std::string> known = {"kind", "sigma", "sigma0", "tau0",
                                              "partition", "B", "eta"};
  for (const auto& item : doc.items()) {
    if (!known.count(item.key())) {
      throw ValidationError("unknown key in model config: " + item.key());
    }
  }

  ModelConfig cfg;
  if (doc.contains("kind")) {
    if (!doc["kind"].is_string()) throw ValidationError("kind must be a string");
    auto name = doc["kind"].get<std::string>();
    auto kind = parse_model_kind(name);
    if (!kind) throw ValidationError("unknown model kind: " + name);
    cfg.kind = *kind;
  } else if (doc.contains("partition")) {
    cfg.kind = ModelKind::LocalGlobal;
  } else {
    throw ValidationError("model config needs a kind");
  }

  if (doc.contains("sigma")) cfg.sigma = number_field(doc, "sigma");
  if (doc.contains("sigma0")) cfg.sigma0 = number_field(doc, "sigma0");
  if (doc.contains("tau0")) cfg.tau0 = number_field(doc, "tau0");

  if (doc.contains("partition")) {
    const auto& p = doc["partition"];
    if (!p.is_array()) throw ValidationError("partition must be an array");
    for (const auto& v : p) {
      if (!v.is_number()) throw ValidationError("partition entries must be numbers");
      cfg.partition.push_back(v.get<double>());
    }
  }
  if (doc.contains("B")) {
    const auto& b = doc["B"];
    if (!b.is_array()) throw ValidationError("B must be an array of rows");
    for (const auto& row : b) {
      if (!row.is_array()) throw ValidationError("B must be an array of rows");
      std::vector<double> r;
      for (const auto& v : row) {
        if (!v.is_number()) throw ValidationError("B entries must be numbers");
        r.push_back(v.get<double>());
      }
      cfg.block_matrix.push_back(std::move(r));
    }
  }
  if (doc.contains("eta")) {
    cfg.eta = std::make_shared<const ModelConfig>(parse_model_config(doc["eta"]));
  }
  return cfg;
}

ModelConfig load_model_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model config " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("model config " + path.string() + " is not valid JSON: " +
                          e.what());
  }
  return parse_model_config(doc);
}

nlohmann::json to_json(const ModelConfig& config) {
  nlohmann::json doc;
  doc["kind"] = std::string(to_string(config.kind));
  if (config.sigma) doc["sigma"] = *config.sigma;
  if (config.sigma0) doc["sigma0"] = *config.sigma0;
  if (config.tau0) doc["tau0"] = *config.tau0;
  if (!config.partition.empty()) doc["partition"] = config.partition;
  if (!config.block_matrix.empty()) doc["B"] = config.block_matrix;
  if (config.eta) doc["eta"] = to_json(*config.eta);
  return doc;
}

std::string config_digest(const ModelConfig& config) {
  std::string text = to_json(config).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

}  // namespace graphex
