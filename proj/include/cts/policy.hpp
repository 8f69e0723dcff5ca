#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cts/particle_set.hpp"
#include "cts/rng.hpp"

namespace cts {

enum class Structure { global, per_arm };

/// How Global-CTS2 picks the particle whose unpulled-arm models seed a new
/// runlength-zero particle.
enum class CopySource { uniform, weighted };

struct PolicyConfig {
  std::size_t arm_count = 5;

  // Change-point Thompson sampling.
  std::size_t cap = 100;
  std::size_t survivors = 0;      // 0: default_survivors(cap)
  std::optional<double> gamma = 1e-3;  // empty: learn the switching rate
  double alpha0 = 1.0;
  double beta0 = 1.0;
  Structure structure = Structure::global;
  bool track_best = false;
  CopySource copy_source = CopySource::uniform;

  // Discounted UCB.
  double discount = 1.0 - 1e-4;
  double xi = 0.6;
  double reward_bound = 1.0;

  /// Throws ConfigError on out-of-range fields.
  void validate() const;
};

/// An action-selection strategy for a k-armed Bernoulli bandit.
///
/// select_arm() and observe() alternate, but observe() accepts any valid arm so
/// replayed logs can be fed in directly. All randomness comes from the caller.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual std::string name() const = 0;
  virtual std::size_t arm_count() const = 0;
  virtual std::size_t select_arm(Rng& rng) = 0;
  virtual void observe(std::size_t arm, int reward, Rng& rng) = 0;

  /// One runlength distribution per change-point model (one for global
  /// structures, one per arm otherwise). Empty for policies without one.
  virtual std::vector<std::vector<RunlengthMass>> runlength_posteriors() const { return {}; }
};

/// Index of the largest value; ties go to the lowest index.
std::size_t argmax_lowest(const std::vector<double>& values);

}  // namespace cts
