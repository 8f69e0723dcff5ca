#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cts/environment.hpp"
#include "cts/metrics.hpp"
#include "cts/policy.hpp"
#include "cts/registry.hpp"

namespace cts {

enum class Metric { eq4, eq5, both, error };

Metric parse_metric(std::string_view text);
std::string_view metric_name(Metric metric);

struct ExperimentConfig {
  EnvironmentSpec env;
  std::vector<std::string> policies = {"global-cts"};
  PolicyConfig policy;
  std::size_t horizon = 1000;
  std::size_t repetitions = 1;
  std::uint64_t base_seed = 0;
  Metric metric = Metric::both;
  std::size_t heatmap_every = 0;  // 0: off
  bool record_steps = false;
  std::filesystem::path out_dir;  // empty: keep everything in memory
  std::size_t threads = 0;        // 0: hardware concurrency

  /// Throws ConfigError.
  void validate() const;
};

/// Seed of repetition r; environment and policy streams are derived from it.
std::uint64_t repetition_seed(std::uint64_t base_seed, std::size_t repetition);
Rng environment_rng(std::uint64_t repetition_seed);
Rng policy_rng(std::uint64_t repetition_seed);

struct RepetitionTotals {
  std::size_t steps = 0;
  std::optional<RegretTotals> regret;  // absent without oracle
  double errors = 0.0;
};

using StepCallback =
    std::function<void(std::size_t t, std::size_t arm, const EnvStep& step, const Policy& policy,
                       const Environment& env)>;

/// One select -> step -> observe loop of `horizon` steps. t in the callback
/// counts completed steps, starting at 1.
RepetitionTotals run_repetition(Environment& env, Policy& policy, std::size_t horizon,
                                Rng& env_rng, Rng& policy_rng, const StepCallback& on_step = {});

struct PolicyResult {
  std::string policy;
  std::vector<RepetitionTotals> repetitions;
  std::optional<Summary> mean_gap;  // cumulative regret, summed gaps
  std::optional<Summary> mistakes;  // cumulative suboptimal pulls
  Summary errors;
  bool normalized = false;  // totals divided by the pull count
};

struct ExperimentResult {
  std::size_t steps = 0;  // effective horizon after clipping to finite replays
  std::size_t arm_count = 0;
  std::vector<PolicyResult> policies;
};

/// Runs every policy for every repetition and aggregates totals. Repetitions
/// may run concurrently; results are merged by index and do not depend on the
/// thread count. With out_dir set, per-step records (every repetition) and
/// heatmap grids (repetition 0) are written there when enabled.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace cts
