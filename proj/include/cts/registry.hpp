#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cts/environment.hpp"
#include "cts/policy.hpp"
#include "cts/replay_envs.hpp"
#include "cts/synthetic_envs.hpp"

namespace cts {

const std::vector<std::string>& policy_names();

/// Builds a registered policy. CTS names fix structure, hazard mode and
/// tracking on top of `base`; baselines read only the fields they use.
/// Throws ConfigError for unknown names.
std::unique_ptr<Policy> make_policy(std::string_view name, const PolicyConfig& base);

bool is_change_point_policy(std::string_view name);

const std::vector<std::string>& environment_names();

struct EnvironmentSpec {
  std::string name = "global-switch";
  std::size_t arm_count = 5;
  double switch_rate = 1e-4;
  double sigma2 = 0.03;
  std::vector<std::string> waveforms;  // periodic
  std::string clicklog;
  std::vector<std::string> articles;
  std::size_t articles_count = 5;
  std::int64_t window = 1000;
  std::string forex;
  std::size_t horizon_ticks = 100;
};

/// Validates a spec and loads any replay file once; make() then builds fresh,
/// independent environments that share the immutable tables.
class EnvironmentFactory {
 public:
  explicit EnvironmentFactory(const EnvironmentSpec& spec);

  std::unique_ptr<Environment> make(Rng& rng) const;
  std::size_t arm_count() const { return arm_count_; }
  bool has_oracle() const { return spec_.name != "forex"; }

 private:
  EnvironmentSpec spec_;
  std::size_t arm_count_ = 0;
  std::vector<Waveform> waves_;
  std::shared_ptr<const ClickLog> clicklog_;
  std::shared_ptr<const PriceSeries> prices_;
};

}  // namespace cts
