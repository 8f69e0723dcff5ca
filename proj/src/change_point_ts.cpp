#include "cts/change_point_ts.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "cts/error.hpp"

namespace cts {
namespace {

ParticleSetOptions set_options(const PolicyConfig& config) {
  return ParticleSetOptions{
      .cap = config.cap,
      .prior = {config.alpha0, config.beta0},
      .mode = config.gamma ? HazardMode::known : HazardMode::learned,
  };
}

}  // namespace

ChangePointThompson::ChangePointThompson(PolicyConfig config)
    : config_(config),
      survivors_(config.survivors != 0 ? config.survivors : default_survivors(config.cap)) {
  config_.validate();
  const ParticleSetOptions options = set_options(config_);
  if (config_.structure == Structure::global) {
    models_.emplace_back(config_.arm_count, options);
  } else {
    for (std::size_t j = 0; j < config_.arm_count; ++j) models_.emplace_back(1, options);
  }
  draws_.resize(config_.arm_count);
}

std::string ChangePointThompson::name() const {
  std::string out = config_.gamma ? "" : "np-";
  out += config_.structure == Structure::global ? "global-cts" : "pa-cts";
  if (config_.track_best) out += "2";
  return out;
}

std::size_t ChangePointThompson::select_arm(Rng& rng) {
  if (config_.structure == Structure::global) {
    const ParticleSet& set = models_.front();
    const auto particle_arms = set.arms(set.sample_index(rng));
    for (std::size_t j = 0; j < config_.arm_count; ++j) {
      draws_[j] = sample_theta(particle_arms[j], rng);
    }
  } else {
    for (std::size_t j = 0; j < config_.arm_count; ++j) {
      const ParticleSet& set = models_[j];
      draws_[j] = sample_theta(set.arms(set.sample_index(rng))[0], rng);
    }
  }
  return argmax_lowest(draws_);
}

void ChangePointThompson::observe(std::size_t arm, int reward, Rng& rng) {
  if (arm >= config_.arm_count) throw std::out_of_range("arm index out of range");
  check_reward(reward);
  if (config_.structure == Structure::global) {
    observe_global(arm, reward, rng);
  } else {
    observe_per_arm(arm, reward, rng);
  }
}

void ChangePointThompson::grow(ParticleSet& set, std::size_t arm, int reward, bool observed) {
  if (config_.gamma) {
    if (observed) {
      set.grow_observed(arm, reward, *config_.gamma);
    } else {
      set.grow_unobserved(*config_.gamma);
    }
  } else {
    set.grow_hazard_learning(arm, reward, observed);
  }
}

void ChangePointThompson::resample_if_full(ParticleSet& set, Rng& rng) {
  if (set.at_capacity() && set.size() > survivors_) set.resample(survivors_, rng);
}

void ChangePointThompson::observe_global(std::size_t arm, int reward, Rng& rng) {
  ParticleSet& set = models_.front();
  if (config_.track_best) {
    // The copy source is chosen from the set as it was before this step.
    std::size_t source = 0;
    if (set.size() > 1) {
      source = config_.copy_source == CopySource::uniform
                   ? std::uniform_int_distribution<std::size_t>(0, set.size() - 1)(rng)
                   : set.sample_index(rng);
    }
    const auto view = set.arms(source);
    copy_scratch_.assign(view.begin(), view.end());
  }
  grow(set, arm, reward, true);
  set.apply_reward(arm, reward);
  if (config_.track_best) set.assign_fresh_arms(copy_scratch_, arm);
  resample_if_full(set, rng);
}

void ChangePointThompson::observe_per_arm(std::size_t arm, int reward, Rng& rng) {
  for (std::size_t j = 0; j < config_.arm_count; ++j) {
    ParticleSet& set = models_[j];
    if (j == arm) {
      grow(set, 0, reward, true);
      set.apply_reward(0, reward);
    } else if (!config_.track_best) {
      grow(set, 0, 0, false);
    } else {
      continue;
    }
    resample_if_full(set, rng);
  }
}

std::vector<std::vector<RunlengthMass>> ChangePointThompson::runlength_posteriors() const {
  std::vector<std::vector<RunlengthMass>> out;
  out.reserve(models_.size());
  for (const ParticleSet& set : models_) out.push_back(set.runlength_marginal());
  return out;
}

}  // namespace cts
