#include "cts/synthetic_envs.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "cts/error.hpp"

namespace cts {
namespace {

void check_rate(double rate) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw ConfigError("switch rate must lie in [0, 1]");
}

std::vector<double> uniform_means(std::size_t arm_count, Rng& rng) {
  if (arm_count == 0) throw ConfigError("arm count must be at least 1");
  std::vector<double> theta(arm_count);
  for (double& v : theta) v = uniform01(rng);
  return theta;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw ConfigError("malformed waveform " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

std::size_t parse_period(std::string_view text) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
    throw ConfigError("malformed waveform period: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

OracleInfo make_oracle(std::span<const double> means, std::size_t arm) {
  const double best = *std::max_element(means.begin(), means.end());
  const double chosen = means[arm];
  return OracleInfo{best, chosen, chosen == best};
}

BernoulliEnvironment::BernoulliEnvironment(std::vector<double> theta) : theta_(std::move(theta)) {
  if (theta_.empty()) throw ConfigError("arm count must be at least 1");
}

EnvStep BernoulliEnvironment::pull(std::size_t arm, Rng& rng) {
  if (arm >= theta_.size()) throw std::out_of_range("arm index out of range");
  const int reward = uniform01(rng) < theta_[arm] ? 1 : 0;
  return EnvStep{reward, make_oracle(theta_, arm)};
}

GlobalSwitchEnvironment::GlobalSwitchEnvironment(std::size_t arm_count, double switch_rate,
                                                 Rng& rng)
    : BernoulliEnvironment(uniform_means(arm_count, rng)), switch_rate_(switch_rate) {
  check_rate(switch_rate);
}

void GlobalSwitchEnvironment::advance(Rng& rng) {
  ++steps_;
  switched_ = uniform01(rng) < switch_rate_;
  if (switched_) {
    for (double& v : theta_) v = uniform01(rng);
    ++changes_;
  }
}

PerArmSwitchEnvironment::PerArmSwitchEnvironment(std::size_t arm_count, double switch_rate,
                                                 Rng& rng)
    : BernoulliEnvironment(uniform_means(arm_count, rng)),
      switch_rate_(switch_rate),
      changes_(arm_count, 0),
      switched_(arm_count, false) {
  check_rate(switch_rate);
}

void PerArmSwitchEnvironment::advance(Rng& rng) {
  ++steps_;
  for (std::size_t j = 0; j < theta_.size(); ++j) {
    switched_[j] = uniform01(rng) < switch_rate_;
    if (switched_[j]) {
      theta_[j] = uniform01(rng);
      ++changes_[j];
    }
  }
}

double sample_truncated_walk(double center, double sigma2, Rng& rng) {
  if (!(sigma2 > 0.0)) throw ConfigError("walk variance must be positive");
  // exp(-d^2 / sigma2) is a normal kernel with variance sigma2 / 2.
  std::normal_distribution<double> step(center, std::sqrt(0.5 * sigma2));
  while (true) {
    const double x = step(rng);
    if (x >= 0.0 && x <= 1.0) return x;
  }
}

TruncatedWalkEnvironment::TruncatedWalkEnvironment(std::size_t arm_count, double sigma2, Rng& rng)
    : TruncatedWalkEnvironment(uniform_means(arm_count, rng), sigma2) {}

TruncatedWalkEnvironment::TruncatedWalkEnvironment(std::vector<double> initial, double sigma2)
    : BernoulliEnvironment(std::move(initial)), sigma2_(sigma2) {
  if (!(sigma2 > 0.0)) throw ConfigError("walk variance must be positive");
  for (const double v : theta_) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("initial means must lie in [0, 1]");
  }
}

void TruncatedWalkEnvironment::advance(Rng& rng) {
  ++steps_;
  for (double& v : theta_) v = sample_truncated_walk(v, sigma2_, rng);
}

double waveform_value(const Waveform& wave, std::size_t t) {
  const double value = std::visit(
      [t](const auto& w) -> double {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, ConstantWave>) {
          return w.value;
        } else if constexpr (std::is_same_v<W, SinusoidWave>) {
          const double phase = static_cast<double>(t % w.period) / static_cast<double>(w.period);
          return w.mean + w.amplitude * std::sin(2.0 * std::numbers::pi * phase + w.phase);
        } else {
          const double center = w.center < 0.0 ? 0.5 * static_cast<double>(w.period) : w.center;
          const double d = static_cast<double>(t % w.period) - center;
          return w.baseline + (w.peak - w.baseline) * std::exp(-d * d / (2.0 * w.width * w.width));
        }
      },
      wave);
  return std::clamp(value, 0.0, 1.0);
}

Waveform parse_waveform(std::string_view text) {
  const auto parts = split(text, ':');
  const std::string_view kind = parts.front();
  const std::size_t args = parts.size() - 1;
  if (kind == "const" && args == 1) {
    return ConstantWave{parse_double(parts[1], "value")};
  }
  if (kind == "sin" && args >= 2 && args <= 4) {
    SinusoidWave w;
    w.amplitude = parse_double(parts[1], "amplitude");
    w.period = parse_period(parts[2]);
    if (args >= 3) w.phase = parse_double(parts[3], "phase");
    if (args >= 4) w.mean = parse_double(parts[4], "mean");
    return w;
  }
  if (kind == "gauss" && args >= 4 && args <= 5) {
    GaussianBumpWave w;
    w.baseline = parse_double(parts[1], "baseline");
    w.peak = parse_double(parts[2], "peak");
    w.width = parse_double(parts[3], "width");
    w.period = parse_period(parts[4]);
    if (args == 5) w.center = parse_double(parts[5], "center");
    if (!(w.width > 0.0)) throw ConfigError("waveform width must be positive");
    return w;
  }
  throw ConfigError("malformed waveform: '" + std::string(text) + "'");
}

std::vector<Waveform> default_waveforms(std::size_t arm_count) {
  std::vector<Waveform> waves;
  for (std::size_t j = 0; j < arm_count; ++j) {
    waves.push_back(SinusoidWave{0.4, 10000,
                                 2.0 * std::numbers::pi * static_cast<double>(j) /
                                     static_cast<double>(arm_count),
                                 0.5});
  }
  return waves;
}

PeriodicEnvironment::PeriodicEnvironment(std::vector<Waveform> waves)
    : BernoulliEnvironment(std::vector<double>(waves.size(), 0.0)), waves_(std::move(waves)) {
  for (std::size_t j = 0; j < waves_.size(); ++j) theta_[j] = waveform_value(waves_[j], 0);
}

void PeriodicEnvironment::advance(Rng&) {
  ++steps_;
  for (std::size_t j = 0; j < waves_.size(); ++j) theta_[j] = waveform_value(waves_[j], steps_);
}

}  // namespace cts
