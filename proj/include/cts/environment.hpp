#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "cts/rng.hpp"

namespace cts {

/// Ground truth at the step a reward was drawn. Absent for replays that have
/// no notion of a true mean.
struct OracleInfo {
  double best_mean = 0.0;
  double chosen_mean = 0.0;
  bool is_optimal = false;  // chosen_mean == best_mean, compared exactly
};

struct EnvStep {
  int reward = 0;
  std::optional<OracleInfo> oracle;
};

/// A stepped k-armed Bernoulli reward source.
///
/// Each time step is advance() followed by exactly one pull(). advance() moves
/// the arm means to the current step, so a policy that inspects means() after
/// advance() sees the means its pull will be scored against.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::string name() const = 0;
  virtual std::size_t arm_count() const = 0;
  virtual void advance(Rng& rng) = 0;
  virtual EnvStep pull(std::size_t arm, Rng& rng) = 0;

  EnvStep step(std::size_t arm, Rng& rng) {
    advance(rng);
    return pull(arm, rng);
  }

  /// Current true (or estimated) arm means; empty when there is no oracle.
  virtual std::span<const double> means() const { return {}; }
  bool has_oracle() const { return !means().empty(); }

  /// Number of steps a finite replay can serve.
  virtual std::optional<std::size_t> length() const { return std::nullopt; }

  /// Whether totals are reported per pull rather than summed.
  virtual bool normalize_by_pulls() const { return false; }
};

/// Oracle fields for pulling `arm` when the means are `means`.
OracleInfo make_oracle(std::span<const double> means, std::size_t arm);

}  // namespace cts
