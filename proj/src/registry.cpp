#include "cts/registry.hpp"

#include <algorithm>

#include "cts/baselines.hpp"
#include "cts/change_point_ts.hpp"
#include "cts/error.hpp"

namespace cts {
namespace {

struct ChangePointVariant {
  std::string_view name;
  Structure structure;
  bool learn_rate;
  bool track_best;
};

constexpr ChangePointVariant kVariants[] = {
    {"global-cts", Structure::global, false, false},
    {"pa-cts", Structure::per_arm, false, false},
    {"np-global-cts", Structure::global, true, false},
    {"np-pa-cts", Structure::per_arm, true, false},
    {"global-cts2", Structure::global, false, true},
    {"pa-cts2", Structure::per_arm, false, true},
    {"np-global-cts2", Structure::global, true, true},
    {"np-pa-cts2", Structure::per_arm, true, true},
};

}  // namespace

const std::vector<std::string>& policy_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& v : kVariants) out.emplace_back(v.name);
    for (const char* b : {"ucb", "ducb", "ts", "random"}) out.emplace_back(b);
    return out;
  }();
  return names;
}

bool is_change_point_policy(std::string_view name) {
  return std::any_of(std::begin(kVariants), std::end(kVariants),
                     [&](const auto& v) { return v.name == name; });
}

std::unique_ptr<Policy> make_policy(std::string_view name, const PolicyConfig& base) {
  base.validate();
  for (const auto& v : kVariants) {
    if (v.name != name) continue;
    PolicyConfig config = base;
    config.structure = v.structure;
    config.track_best = v.track_best;
    if (v.learn_rate) {
      config.gamma.reset();
    } else if (!config.gamma) {
      config.gamma = 1e-3;
    }
    return std::make_unique<ChangePointThompson>(config);
  }
  if (name == "ucb") return std::make_unique<Ucb1>(base.arm_count);
  if (name == "ducb") {
    return std::make_unique<DiscountedUcb>(base.arm_count, base.discount, base.xi, base.reward_bound);
  }
  if (name == "ts") {
    return std::make_unique<StationaryThompson>(base.arm_count, BetaParams{base.alpha0, base.beta0});
  }
  if (name == "random") return std::make_unique<RandomPolicy>(base.arm_count);
  throw ConfigError("unknown policy '" + std::string(name) + "'");
}

const std::vector<std::string>& environment_names() {
  static const std::vector<std::string> names = {"global-switch", "per-arm-switch", "trunc-walk",
                                                 "periodic",      "clicklog",       "forex"};
  return names;
}

EnvironmentFactory::EnvironmentFactory(const EnvironmentSpec& spec) : spec_(spec) {
  const auto& names = environment_names();
  if (std::find(names.begin(), names.end(), spec_.name) == names.end()) {
    throw ConfigError("unknown environment '" + spec_.name + "'");
  }
  if (spec_.name == "clicklog") {
    if (spec_.clicklog.empty()) throw ConfigError("clicklog environment needs --clicklog PATH");
    auto log = std::make_shared<ClickLog>(ClickLog::load(spec_.clicklog));
    // Resolve the article set once so every repetition replays the same arms.
    if (spec_.articles.empty()) {
      spec_.articles = select_overlapping_articles(*log, spec_.articles_count);
    }
    ClickLogEnvironment probe(*log, {spec_.articles_count, spec_.articles, spec_.window});
    arm_count_ = probe.arm_count();
    clicklog_ = std::move(log);
    return;
  }
  if (spec_.name == "forex") {
    if (spec_.forex.empty()) throw ConfigError("forex environment needs --forex PATH");
    auto prices = std::make_shared<PriceSeries>(PriceSeries::load(spec_.forex));
    ForexEnvironment probe(*prices, spec_.horizon_ticks);
    arm_count_ = 2;
    prices_ = std::move(prices);
    return;
  }
  if (spec_.arm_count < 1) throw ConfigError("arm count must be at least 1");
  if (!(spec_.switch_rate >= 0.0 && spec_.switch_rate <= 1.0)) {
    throw ConfigError("switch rate must lie in [0, 1]");
  }
  if (spec_.name == "trunc-walk" && !(spec_.sigma2 > 0.0)) {
    throw ConfigError("walk variance must be positive");
  }
  if (spec_.name == "periodic") {
    if (spec_.waveforms.empty()) {
      waves_ = default_waveforms(spec_.arm_count);
    } else {
      if (spec_.waveforms.size() != spec_.arm_count) {
        throw ConfigError("periodic environment needs one --waveform per arm");
      }
      for (const auto& w : spec_.waveforms) waves_.push_back(parse_waveform(w));
    }
  }
  arm_count_ = spec_.arm_count;
}

std::unique_ptr<Environment> EnvironmentFactory::make(Rng& rng) const {
  const std::string& n = spec_.name;
  if (n == "global-switch") {
    return std::make_unique<GlobalSwitchEnvironment>(arm_count_, spec_.switch_rate, rng);
  }
  if (n == "per-arm-switch") {
    return std::make_unique<PerArmSwitchEnvironment>(arm_count_, spec_.switch_rate, rng);
  }
  if (n == "trunc-walk") return std::make_unique<TruncatedWalkEnvironment>(arm_count_, spec_.sigma2, rng);
  if (n == "periodic") return std::make_unique<PeriodicEnvironment>(waves_);
  if (n == "clicklog") {
    return std::make_unique<ClickLogEnvironment>(
        *clicklog_, ClickLogOptions{spec_.articles_count, spec_.articles, spec_.window});
  }
  return std::make_unique<ForexEnvironment>(*prices_, spec_.horizon_ticks);
}

}  // namespace cts
