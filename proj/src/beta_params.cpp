#include "cts/beta_params.hpp"

#include <random>
#include <stdexcept>

namespace cts {

void check_reward(int reward) {
  if (reward != 0 && reward != 1) {
    throw std::invalid_argument("reward must be 0 or 1");
  }
}

BetaParams posterior_update(BetaParams params, int reward) {
  check_reward(reward);
  if (reward == 1) {
    params.alpha += 1.0;
  } else {
    params.beta += 1.0;
  }
  return params;
}

double predictive_likelihood(BetaParams params, int reward) {
  check_reward(reward);
  const double total = params.alpha + params.beta;
  return reward == 1 ? params.alpha / total : params.beta / total;
}

double sample_theta(BetaParams params, Rng& rng) {
  std::gamma_distribution<double> success(params.alpha, 1.0);
  std::gamma_distribution<double> failure(params.beta, 1.0);
  const double x = success(rng);
  const double y = failure(rng);
  const double sum = x + y;
  // Both gammas can underflow to zero for tiny shape parameters.
  if (sum <= 0.0) {
    return beta_mean(params);
  }
  return x / sum;
}

double beta_mean(BetaParams params) { return params.alpha / (params.alpha + params.beta); }

double beta_variance(BetaParams params) {
  const double s = params.alpha + params.beta;
  return params.alpha * params.beta / (s * s * (s + 1.0));
}

}  // namespace cts
