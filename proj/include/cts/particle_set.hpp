#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "cts/beta_params.hpp"
#include "cts/rng.hpp"

namespace cts {

inline constexpr std::size_t kUnboundedCap = std::numeric_limits<std::size_t>::max();

/// Known switching rate, or a Beta(1, 1)-distributed rate learned jointly with
/// the runlength by tracking the number of switches seen so far.
enum class HazardMode { known, learned };

/// One runlength hypothesis: its posterior weight and the arm posteriors built
/// from the data since the hypothesized change point.
struct Particle {
  std::size_t runlength = 0;
  double weight = 0.0;
  std::vector<BetaParams> arms;
  std::optional<std::size_t> switch_count;  // learned hazard mode only
};

struct RunlengthMass {
  std::size_t runlength = 0;
  double weight = 0.0;
};

struct ParticleSetOptions {
  std::size_t cap = kUnboundedCap;
  BetaParams prior{};
  HazardMode mode = HazardMode::known;
};

/// Survivor count used when a set reaches its cap: N - ceil(N / 10).
std::size_t default_survivors(std::size_t cap);

/// A bounded, normalized runlength posterior with per-runlength arm models.
///
/// Storage is struct-of-arrays; arm hyperparameters live in one flat buffer
/// of size() * arm_count() entries. Particle keys (runlength, plus the switch
/// count in learned mode) are unique and the weights sum to one after every
/// public mutation.
///
/// Each grow_* call appends the new runlength-zero particles at the back of
/// the set. Until the next growth step, apply_reward() touches only the
/// continuations and assign_fresh_arms() only the new particles; resample()
/// preserves that split.
class ParticleSet {
 public:
  /// One particle at runlength 0 with weight 1 and prior arm models.
  explicit ParticleSet(std::size_t arm_count, ParticleSetOptions options = {});

  /// Builds a set from explicit particles; weights are renormalized.
  ParticleSet(std::size_t arm_count, std::vector<Particle> particles, std::size_t elapsed,
              ParticleSetOptions options = {});

  std::size_t size() const { return weights_.size(); }
  bool empty() const { return weights_.empty(); }
  std::size_t cap() const { return options_.cap; }
  bool at_capacity() const { return size() >= options_.cap; }
  std::size_t elapsed() const { return elapsed_; }
  std::size_t arm_count() const { return arm_count_; }
  HazardMode mode() const { return options_.mode; }
  BetaParams prior() const { return options_.prior; }

  std::size_t runlength(std::size_t i) const { return runlengths_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }
  std::optional<std::size_t> switch_count(std::size_t i) const;
  std::span<const BetaParams> arms(std::size_t i) const {
    return {arms_.data() + i * arm_count_, arm_count_};
  }
  Particle particle(std::size_t i) const;
  std::vector<Particle> particles() const;

  /// Message pass for an observed reward on `arm` with switching rate
  /// `hazard`. Likelihoods use the current hyperparameters; the arm models
  /// themselves are left untouched.
  void grow_observed(std::size_t arm, int reward, double hazard);

  /// Message pass without a likelihood term, for a model whose arm was not
  /// pulled.
  void grow_unobserved(double hazard);

  /// Joint (runlength, switch count) message pass with the switching rate
  /// integrated out. `observed` false drops the likelihood term.
  void grow_hazard_learning(std::size_t arm, int reward, bool observed);

  /// Posterior update of `arm` on every continuation of the last growth step.
  void apply_reward(std::size_t arm, int reward);

  /// Overwrites the arm models of the last step's new particles with `source`,
  /// except for `keep_arm`, which keeps the prior.
  void assign_fresh_arms(std::span<const BetaParams> source, std::size_t keep_arm);

  /// Index i drawn with probability weight(i). A single-particle set returns 0
  /// without consuming randomness.
  std::size_t sample_index(Rng& rng) const;
  Particle sample_particle(Rng& rng) const;

  /// Stratified optimal resampling down to at most `survivors` particles,
  /// followed by a single renormalization.
  void resample(std::size_t survivors, Rng& rng);

  /// Weight per runlength (summed over switch counts), ascending runlength.
  std::vector<RunlengthMass> runlength_marginal() const;

  /// Particles visited by all operations so far; used to check per-step cost.
  std::uint64_t work() const { return work_; }

 private:
  void require_nonempty() const;
  void grow_constant_rate(std::optional<std::size_t> arm, int reward, double hazard);
  void push_fresh(double weight, std::size_t switch_count);
  void drop_zero_and_normalize(std::size_t fresh_begin);

  std::size_t arm_count_;
  ParticleSetOptions options_;
  std::size_t elapsed_ = 0;
  std::vector<std::size_t> runlengths_;
  std::vector<std::size_t> switch_counts_;  // empty in known mode
  std::vector<double> weights_;
  std::vector<BetaParams> arms_;
  std::size_t fresh_begin_ = 0;
  mutable std::uint64_t work_ = 0;

  std::vector<std::pair<std::size_t, double>> scratch_fresh_;
};

}  // namespace cts
