#pragma once

#include "cts/rng.hpp"

namespace cts {

/// Beta posterior over the success probability of one Bernoulli arm. Both
/// fields include the prior pseudo-counts and stay strictly positive.
struct BetaParams {
  double alpha = 1.0;
  double beta = 1.0;

  friend bool operator==(const BetaParams&, const BetaParams&) = default;
};

/// Throws std::invalid_argument unless reward is 0 or 1.
void check_reward(int reward);

/// Adds one pseudo-count to alpha on a success, to beta on a failure.
BetaParams posterior_update(BetaParams params, int reward);

/// Posterior predictive probability of observing `reward` next.
double predictive_likelihood(BetaParams params, int reward);

/// Draw theta ~ Beta(alpha, beta) as X / (X + Y) with X, Y Gamma variates.
double sample_theta(BetaParams params, Rng& rng);

double beta_mean(BetaParams params);
double beta_variance(BetaParams params);

}  // namespace cts
