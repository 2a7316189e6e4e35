#pragma once

#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "graphex/config.hpp"
#include "graphex/localglobal.hpp"
#include "graphex/sampler.hpp"
#include "graphex/stats.hpp"

namespace graphex {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitResource = 2,
  kExitIo = 3,
  kExitVerification = 4,
};

/// Maps an exception from any command to the process exit code.
int exit_code_for(const std::exception& error);

/// Per-replicate seed derived from the master seed and grid position.
std::uint64_t replicate_seed(std::uint64_t master_seed, std::uint64_t alpha_index,
                             std::uint64_t replicate_index);

/// Runs fn(0) .. fn(n - 1) on up to `threads` threads.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

struct SampleRequest {
  ModelConfig model;
  double alpha = 1.0;
  std::uint64_t seed = 0;
  double delta = 1e-3;
  std::filesystem::path out;
  bool fast = false;
  unsigned threads = 1;
};

/// A graph from either model family; block labels are present for LocalGlobal.
struct ModelSample {
  SampledGraph graph;
  std::optional<LgSampledGraph> lg;
};

/// Plain models use the fast sampler when `fast` is set and the kind allows
/// it, the direct sampler otherwise. LocalGlobal models always use cells.
ModelSample sample_model(const ModelConfig& config, double alpha, std::uint64_t seed,
                         double delta, bool fast, const SamplerOptions& options);

GraphStats cmd_sample(const SampleRequest& request);

struct SweepRequest {
  ModelConfig model;
  std::vector<double> alphas;
  std::uint32_t reps = 1;
  std::uint64_t master_seed = 0;
  double delta = 1e-3;
  std::filesystem::path out;
  bool fast = false;
  unsigned threads = 1;
};

SweepResult run_sweep(const SweepRequest& request);
SweepResult cmd_sweep(const SweepRequest& request);

struct VerifyRequest {
  ModelConfig model;
  std::filesystem::path out;
  std::uint32_t reps = 200;
  std::uint64_t seed = 1;
  double delta = 1e-3;
  unsigned threads = 1;
};

struct VerifyReport {
  nlohmann::json doc;
  bool passed = false;
};

VerifyReport run_verify(const VerifyRequest& request);
/// Writes the report; callers exit with kExitVerification when it failed.
VerifyReport cmd_verify(const VerifyRequest& request);

}  // namespace graphex
