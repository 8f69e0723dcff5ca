#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cts/environment.hpp"

namespace cts {

/// Shared Bernoulli reward emission over a vector of means in [0, 1].
class BernoulliEnvironment : public Environment {
 public:
  std::size_t arm_count() const override { return theta_.size(); }
  EnvStep pull(std::size_t arm, Rng& rng) override;
  std::span<const double> means() const override { return theta_; }
  std::size_t steps() const { return steps_; }

 protected:
  explicit BernoulliEnvironment(std::vector<double> theta);

  std::vector<double> theta_;
  std::size_t steps_ = 0;
};

/// All arms are redrawn from U(0, 1) together with probability `switch_rate`
/// at the start of every step.
class GlobalSwitchEnvironment final : public BernoulliEnvironment {
 public:
  GlobalSwitchEnvironment(std::size_t arm_count, double switch_rate, Rng& rng);

  std::string name() const override { return "global-switch"; }
  void advance(Rng& rng) override;
  std::size_t change_events() const { return changes_; }
  /// Whether the most recent advance() redrew the means.
  bool switched() const { return switched_; }

 private:
  double switch_rate_;
  std::size_t changes_ = 0;
  bool switched_ = false;
};

/// Every arm is independently redrawn from U(0, 1) with probability
/// `switch_rate` per step.
class PerArmSwitchEnvironment final : public BernoulliEnvironment {
 public:
  PerArmSwitchEnvironment(std::size_t arm_count, double switch_rate, Rng& rng);

  std::string name() const override { return "per-arm-switch"; }
  void advance(Rng& rng) override;
  const std::vector<std::size_t>& change_events() const { return changes_; }
  const std::vector<bool>& switched() const { return switched_; }

 private:
  double switch_rate_;
  std::vector<std::size_t> changes_;
  std::vector<bool> switched_;
};

/// Draw from the density proportional to exp(-(x - center)^2 / sigma2) on
/// [0, 1], by rejection from the untruncated normal with standard deviation
/// sqrt(sigma2 / 2).
double sample_truncated_walk(double center, double sigma2, Rng& rng);

/// Each mean drifts by a [0, 1]-truncated normal step every advance().
class TruncatedWalkEnvironment final : public BernoulliEnvironment {
 public:
  TruncatedWalkEnvironment(std::size_t arm_count, double sigma2, Rng& rng);
  TruncatedWalkEnvironment(std::vector<double> initial, double sigma2);

  std::string name() const override { return "trunc-walk"; }
  void advance(Rng& rng) override;

 private:
  double sigma2_;
};

struct ConstantWave {
  double value = 0.5;
};

/// mean + amplitude * sin(2 pi (t mod period) / period + phase)
struct SinusoidWave {
  double amplitude = 0.4;
  std::size_t period = 1000;
  double phase = 0.0;
  double mean = 0.5;
};

/// baseline + (peak - baseline) * exp(-d^2 / (2 width^2)), d the distance of
/// t mod period from `center` (period / 2 when negative).
struct GaussianBumpWave {
  double baseline = 0.2;
  double peak = 0.8;
  double width = 50.0;
  std::size_t period = 1000;
  double center = -1.0;
};

using Waveform = std::variant<ConstantWave, SinusoidWave, GaussianBumpWave>;

/// Waveform value at integer time t, clamped to [0, 1].
double waveform_value(const Waveform& wave, std::size_t t);

/// Parses "const:V", "sin:AMP:PERIOD[:PHASE[:MEAN]]" or
/// "gauss:BASE:PEAK:WIDTH:PERIOD[:CENTER]". Throws ConfigError.
Waveform parse_waveform(std::string_view text);

/// Phase-shifted sinusoids, one per arm, used when no waveform is given.
std::vector<Waveform> default_waveforms(std::size_t arm_count);

/// Deterministic periodic means; only the rewards are random.
class PeriodicEnvironment final : public BernoulliEnvironment {
 public:
  explicit PeriodicEnvironment(std::vector<Waveform> waves);

  std::string name() const override { return "periodic"; }
  void advance(Rng& rng) override;

 private:
  std::vector<Waveform> waves_;
};

}  // namespace cts
