#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "cts/resampling.hpp"
#include "oracles.hpp"

namespace cts {
namespace {

double residual(const std::vector<double>& p, double kappa, std::size_t m) {
  double s = 0.0;
  for (double v : p) s += std::min(1.0, v / kappa);
  return std::abs(s - static_cast<double>(m));
}

std::vector<double> random_weights(Rng& rng, std::size_t n) {
  std::vector<double> p(n);
  for (double& v : p) v = 1e-3 + uniform01(rng);
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& v : p) v /= total;
  return p;
}

TEST(SolveKappa, HandExamples) {
  EXPECT_NEAR(solve_kappa(std::vector<double>{0.5, 0.3, 0.2}, 2), 0.5, 1e-12);
  EXPECT_NEAR(solve_kappa(std::vector<double>{0.25, 0.25, 0.25, 0.25}, 2), 0.5, 1e-12);
  EXPECT_NEAR(solve_kappa(std::vector<double>{0.7, 0.2, 0.1}, 2), 0.3, 1e-12);
}

TEST(SolveKappa, NoResamplingWhenSurvivorsCoverSupport) {
  EXPECT_THROW(solve_kappa(std::vector<double>{0.5, 0.5}, 2), NoResamplingNeeded);
  EXPECT_THROW(solve_kappa(std::vector<double>{1.0}, 3), NoResamplingNeeded);
}

TEST(SolveKappa, ResidualAndClosedFormAgree) {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 150;
    std::vector<double> p = random_weights(rng, n);
    // Make some vectors heavy-tailed so the clipped branch is exercised.
    if (trial % 3 == 0) {
      p[0] += 5.0;
      const double total = std::accumulate(p.begin(), p.end(), 0.0);
      for (double& v : p) v /= total;
    }
    const std::size_t m = 1 + rng() % (n - 1);
    const double kappa = solve_kappa(p, m);
    EXPECT_LE(residual(p, kappa, m), 1e-9);
    EXPECT_NEAR(kappa, testing::closed_form_kappa(p, m), 1e-9 * kappa);
  }
}

TEST(StratifiedOptimalResample, HeavyParticleAlwaysKept) {
  Rng rng(4);
  const std::vector<double> p{0.99, 0.004, 0.003, 0.002, 0.001};
  for (int i = 0; i < 1000; ++i) {
    const auto q = stratified_optimal_resample(p, 2, rng);
    EXPECT_EQ(q[0], 0.99);
    EXPECT_EQ(std::count_if(q.begin(), q.end(), [](double v) { return v > 0; }), 2);
  }
}

TEST(StratifiedOptimalResample, LightParticlesSurviveInProportion) {
  // Tolerance is about 2 standard errors at this trial count; 2e6 trials give
  // 0.6669.
  Rng rng(42);
  const std::vector<double> p{0.7, 0.2, 0.1};
  const int trials = 10000;
  int kept_second = 0;
  for (int i = 0; i < trials; ++i) {
    const auto q = stratified_optimal_resample(p, 2, rng);
    ASSERT_EQ(q[0], 0.7);
    ASSERT_TRUE((q[1] > 0) != (q[2] > 0));
    const double survivor = q[1] > 0 ? q[1] : q[2];
    ASSERT_NEAR(survivor, 0.3, 1e-12);
    kept_second += q[1] > 0;
  }
  EXPECT_NEAR(static_cast<double>(kept_second) / trials, 2.0 / 3.0, 0.01);
}

// E[q_i] = p_i within 3 standard errors; survivors never exceed M.
void expect_unbiased(const std::vector<double>& p, std::size_t m, int trials, Rng& rng) {
  std::vector<double> sum(p.size(), 0.0), sum_sq(p.size(), 0.0);
  for (int i = 0; i < trials; ++i) {
    const auto q = stratified_optimal_resample(p, m, rng);
    ASSERT_LE(static_cast<std::size_t>(std::count_if(q.begin(), q.end(), [](double v) { return v > 0; })), m);
    for (std::size_t j = 0; j < p.size(); ++j) {
      sum[j] += q[j];
      sum_sq[j] += q[j] * q[j];
    }
  }
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double mean = sum[j] / trials;
    const double var = std::max(0.0, sum_sq[j] / trials - mean * mean);
    const double se = std::sqrt(var / trials);
    EXPECT_LE(std::abs(mean - p[j]), 3.0 * se + 1e-15) << "index " << j;
  }
}

TEST(StratifiedOptimalResample, UnbiasedOnHandVector) {
  Rng rng(15);
  expect_unbiased({0.5, 0.3, 0.2}, 2, 100000, rng);
}

TEST(StratifiedOptimalResample, UnbiasedOnRandomVectors) {
  Rng rng(16);
  for (int v = 0; v < 5; ++v) expect_unbiased(random_weights(rng, 10), 5, 20000, rng);
}

}  // namespace
}  // namespace cts
