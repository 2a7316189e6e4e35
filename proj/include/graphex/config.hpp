#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "graphex/graphon.hpp"

namespace graphex {

/// Strict parse: unknown keys and parameters foreign to the kind are errors.
/// A document without "kind" but with "partition" is read as LocalGlobal.
ModelConfig parse_model_config(const nlohmann::json& doc);
ModelConfig load_model_config(const std::filesystem::path& path);

nlohmann::json to_json(const ModelConfig& config);

/// FNV-1a digest of the canonical JSON form, as 16 hex digits.
std::string config_digest(const ModelConfig& config);

}  // namespace graphex
