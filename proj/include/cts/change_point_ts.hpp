#pragma once

#include <string>
#include <vector>

#include "cts/beta_params.hpp"
#include "cts/particle_set.hpp"
#include "cts/policy.hpp"

namespace cts {

/// Change-point Thompson sampling.
///
/// Covers the whole family: a single shared runlength model (global) or one
/// per arm, a known or learned switching rate, and the track-best ("2")
/// variants where only the pulled arm's statistics move.
///
/// Selection first draws a runlength particle, then a theta per arm from that
/// particle's Beta posteriors, and plays the argmax. Observation grows the
/// change model using the pre-update hyperparameters, then updates the arm
/// models, then resamples any set that reached its cap.
class ChangePointThompson final : public Policy {
 public:
  explicit ChangePointThompson(PolicyConfig config);

  std::string name() const override;
  std::size_t arm_count() const override { return config_.arm_count; }
  std::size_t select_arm(Rng& rng) override;
  void observe(std::size_t arm, int reward, Rng& rng) override;
  std::vector<std::vector<RunlengthMass>> runlength_posteriors() const override;

  const PolicyConfig& config() const { return config_; }
  /// The shared set (global) or one set per arm, each holding one arm model.
  const std::vector<ParticleSet>& models() const { return models_; }

 private:
  void observe_global(std::size_t arm, int reward, Rng& rng);
  void observe_per_arm(std::size_t arm, int reward, Rng& rng);
  void grow(ParticleSet& set, std::size_t arm, int reward, bool observed);
  void resample_if_full(ParticleSet& set, Rng& rng);

  PolicyConfig config_;
  std::size_t survivors_;
  std::vector<ParticleSet> models_;
  std::vector<double> draws_;
  std::vector<BetaParams> copy_scratch_;
};

}  // namespace cts
