#include "cts/policy.hpp"

#include "cts/error.hpp"

namespace cts {

std::size_t argmax_lowest(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < values.size(); ++j) {
    if (values[j] > values[best]) best = j;
  }
  return best;
}

void PolicyConfig::validate() const {
  if (arm_count < 1) throw ConfigError("arm count must be at least 1");
  if (cap < 2) throw ConfigError("particle cap must be at least 2");
  if (survivors != 0 && survivors >= cap) throw ConfigError("survivor count must be below the cap");
  if (gamma && !(*gamma >= 0.0 && *gamma <= 1.0)) throw ConfigError("gamma must lie in [0, 1]");
  if (!(alpha0 > 0.0 && beta0 > 0.0)) throw ConfigError("prior pseudo-counts must be positive");
  if (!(discount > 0.0 && discount <= 1.0)) throw ConfigError("discount must lie in (0, 1]");
  if (!(xi > 0.0)) throw ConfigError("xi must be positive");
  if (!(reward_bound > 0.0)) throw ConfigError("reward bound must be positive");
}

}  // namespace cts
