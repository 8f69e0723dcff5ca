#include "cts/resampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cts {
namespace {

double kept_mass(std::span<const double> weights, double kappa) {
  double total = 0.0;
  for (const double p : weights) {
    total += std::min(1.0, p / kappa);
  }
  return total;
}

}  // namespace

double solve_kappa(std::span<const double> weights, std::size_t survivors) {
  if (survivors == 0) {
    throw std::invalid_argument("survivor count must be positive");
  }
  if (survivors >= weights.size()) {
    throw NoResamplingNeeded();
  }
  const double smallest = *std::min_element(weights.begin(), weights.end());
  if (!(smallest > 0.0)) {
    throw std::invalid_argument("resampling weights must be positive");
  }

  const double target = static_cast<double>(survivors);
  double lo = smallest * 1e-3;  // kept_mass(lo) == size > target
  double hi = 1.0;              // kept_mass(hi) == sum(p) <= target
  double mid = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    const double residual = kept_mass(weights, mid) - target;
    if (std::abs(residual) < 1e-12) {
      break;
    }
    if (residual > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

std::vector<double> stratified_optimal_resample(std::span<const double> weights,
                                                std::size_t survivors, Rng& rng) {
  const double kappa = solve_kappa(weights, survivors);

  std::size_t heavy = 0;
  for (const double p : weights) {
    if (p > kappa) ++heavy;
  }
  // Rounding in kappa can let the sweep cross one extra stratum; the cap keeps
  // the survivor bound exact.
  const std::size_t light_slots = survivors - std::min(heavy, survivors);

  std::vector<double> q(weights.size(), 0.0);
  double u = uniform01(rng) * kappa;
  std::size_t light_kept = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double p = weights[i];
    if (p > kappa) {
      q[i] = p;
      continue;
    }
    u -= p;
    if (u < 0.0 && light_kept < light_slots) {
      q[i] = kappa;
      u += kappa;
      ++light_kept;
    }
  }
  return q;
}

}  // namespace cts
