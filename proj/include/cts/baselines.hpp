#pragma once

#include <string>
#include <vector>

#include "cts/beta_params.hpp"
#include "cts/policy.hpp"

namespace cts {

/// UCB1: play each arm once, then argmax of mean + sqrt(2 ln t / n_j).
class Ucb1 final : public Policy {
 public:
  explicit Ucb1(std::size_t arm_count);

  std::string name() const override { return "ucb"; }
  std::size_t arm_count() const override { return counts_.size(); }
  std::size_t select_arm(Rng& rng) override;
  void observe(std::size_t arm, int reward, Rng& rng) override;

 private:
  std::vector<double> counts_;
  std::vector<double> sums_;
  double total_ = 0.0;
  std::vector<double> scores_;
};

/// Discounted UCB. Counts and reward sums decay by `discount` every step; the
/// index is X_j / N_j + 2 B sqrt(xi ln(sum_j N_j) / N_j). Arms with zero
/// discounted count are played first, lowest index first.
class DiscountedUcb final : public Policy {
 public:
  DiscountedUcb(std::size_t arm_count, double discount, double xi, double reward_bound);

  std::string name() const override { return "ducb"; }
  std::size_t arm_count() const override { return counts_.size(); }
  std::size_t select_arm(Rng& rng) override;
  void observe(std::size_t arm, int reward, Rng& rng) override;

 private:
  double discount_;
  double xi_;
  double reward_bound_;
  std::vector<double> counts_;
  std::vector<double> sums_;
  std::vector<double> scores_;
};

/// Stationary Beta-Bernoulli Thompson sampling.
class StationaryThompson final : public Policy {
 public:
  StationaryThompson(std::size_t arm_count, BetaParams prior);

  std::string name() const override { return "ts"; }
  std::size_t arm_count() const override { return arms_.size(); }
  std::size_t select_arm(Rng& rng) override;
  void observe(std::size_t arm, int reward, Rng& rng) override;

  const std::vector<BetaParams>& arms() const { return arms_; }

 private:
  std::vector<BetaParams> arms_;
  std::vector<double> draws_;
};

class RandomPolicy final : public Policy {
 public:
  explicit RandomPolicy(std::size_t arm_count);

  std::string name() const override { return "random"; }
  std::size_t arm_count() const override { return arm_count_; }
  std::size_t select_arm(Rng& rng) override;
  void observe(std::size_t arm, int reward, Rng& rng) override;

 private:
  std::size_t arm_count_;
};

}  // namespace cts
