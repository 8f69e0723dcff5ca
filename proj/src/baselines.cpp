#include "cts/baselines.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "cts/error.hpp"

namespace cts {
namespace {

void check_arm(std::size_t arm, std::size_t arm_count) {
  if (arm >= arm_count) throw std::out_of_range("arm index out of range");
}

std::size_t require_arms(std::size_t arm_count) {
  if (arm_count == 0) throw ConfigError("arm count must be at least 1");
  return arm_count;
}

}  // namespace

Ucb1::Ucb1(std::size_t arm_count)
    : counts_(require_arms(arm_count), 0.0), sums_(arm_count, 0.0), scores_(arm_count, 0.0) {}

std::size_t Ucb1::select_arm(Rng&) {
  for (std::size_t j = 0; j < counts_.size(); ++j) {
    if (counts_[j] == 0.0) return j;
  }
  const double log_t = std::log(total_);
  for (std::size_t j = 0; j < counts_.size(); ++j) {
    scores_[j] = sums_[j] / counts_[j] + std::sqrt(2.0 * log_t / counts_[j]);
  }
  return argmax_lowest(scores_);
}

void Ucb1::observe(std::size_t arm, int reward, Rng&) {
  check_arm(arm, counts_.size());
  check_reward(reward);
  counts_[arm] += 1.0;
  sums_[arm] += reward;
  total_ += 1.0;
}

DiscountedUcb::DiscountedUcb(std::size_t arm_count, double discount, double xi,
                             double reward_bound)
    : discount_(discount),
      xi_(xi),
      reward_bound_(reward_bound),
      counts_(require_arms(arm_count), 0.0),
      sums_(arm_count, 0.0),
      scores_(arm_count, 0.0) {
  if (!(discount > 0.0 && discount <= 1.0)) throw ConfigError("discount must lie in (0, 1]");
}

std::size_t DiscountedUcb::select_arm(Rng&) {
  double total = 0.0;
  for (std::size_t j = 0; j < counts_.size(); ++j) {
    if (counts_[j] <= 0.0) return j;
    total += counts_[j];
  }
  const double log_n = std::log(total);
  for (std::size_t j = 0; j < counts_.size(); ++j) {
    scores_[j] = sums_[j] / counts_[j] + 2.0 * reward_bound_ * std::sqrt(xi_ * log_n / counts_[j]);
  }
  return argmax_lowest(scores_);
}

void DiscountedUcb::observe(std::size_t arm, int reward, Rng&) {
  check_arm(arm, counts_.size());
  check_reward(reward);
  if (discount_ != 1.0) {
    for (std::size_t j = 0; j < counts_.size(); ++j) {
      counts_[j] *= discount_;
      sums_[j] *= discount_;
    }
  }
  counts_[arm] += 1.0;
  sums_[arm] += reward;
}

StationaryThompson::StationaryThompson(std::size_t arm_count, BetaParams prior)
    : arms_(require_arms(arm_count), prior), draws_(arm_count, 0.0) {
  if (!(prior.alpha > 0.0 && prior.beta > 0.0)) {
    throw ConfigError("prior pseudo-counts must be positive");
  }
}

std::size_t StationaryThompson::select_arm(Rng& rng) {
  for (std::size_t j = 0; j < arms_.size(); ++j) draws_[j] = sample_theta(arms_[j], rng);
  return argmax_lowest(draws_);
}

void StationaryThompson::observe(std::size_t arm, int reward, Rng&) {
  check_arm(arm, arms_.size());
  arms_[arm] = posterior_update(arms_[arm], reward);
}

RandomPolicy::RandomPolicy(std::size_t arm_count) : arm_count_(require_arms(arm_count)) {}

std::size_t RandomPolicy::select_arm(Rng& rng) {
  return std::uniform_int_distribution<std::size_t>(0, arm_count_ - 1)(rng);
}

void RandomPolicy::observe(std::size_t arm, int reward, Rng&) {
  check_arm(arm, arm_count_);
  check_reward(reward);
}

}  // namespace cts
