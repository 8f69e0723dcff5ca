#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cts/beta_params.hpp"

namespace cts {
namespace {

TEST(PosteriorUpdate, CountsOneRewardAtATime) {
  EXPECT_EQ(posterior_update({1, 1}, 1), (BetaParams{2, 1}));
  EXPECT_EQ(posterior_update({2, 3}, 0), (BetaParams{2, 4}));

  BetaParams p{1, 1};
  for (int r : {1, 1, 0, 1}) p = posterior_update(p, r);
  EXPECT_EQ(p, (BetaParams{4, 2}));
}

TEST(PosteriorUpdate, RejectsNonBinaryReward) {
  EXPECT_THROW(posterior_update({1, 1}, 2), std::invalid_argument);
  EXPECT_THROW(predictive_likelihood({1, 1}, -1), std::invalid_argument);
}

TEST(PosteriorUpdate, PseudoCountsTrackRewardCounts) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    // Dyadic priors keep the pseudo-count arithmetic exact.
    const BetaParams prior{0.5 + trial * 0.25, 2.0};
    BetaParams p = prior;
    int ones = 0;
    int zeros = 0;
    const int n = 1 + static_cast<int>(rng() % 200);
    for (int i = 0; i < n; ++i) {
      const int r = static_cast<int>(rng() % 2);
      (r == 1 ? ones : zeros)++;
      p = posterior_update(p, r);
    }
    EXPECT_EQ(p.alpha - prior.alpha, ones);
    EXPECT_EQ(p.beta - prior.beta, zeros);
    EXPECT_DOUBLE_EQ(p.alpha + p.beta, prior.alpha + prior.beta + n);
  }
}

TEST(PredictiveLikelihood, HandValues) {
  EXPECT_DOUBLE_EQ(predictive_likelihood({1, 1}, 1), 0.5);
  EXPECT_DOUBLE_EQ(predictive_likelihood({3, 1}, 1), 0.75);
  EXPECT_DOUBLE_EQ(predictive_likelihood({2, 3}, 0), 0.6);
}

TEST(PredictiveLikelihood, SumsToOne) {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const BetaParams p{0.01 + uniform01(rng) * 1e3, 0.01 + uniform01(rng) * 1e3};
    const double sum = predictive_likelihood(p, 1) + predictive_likelihood(p, 0);
    EXPECT_NEAR(sum, 1.0, 2.3e-16);
  }
}

TEST(SampleTheta, StaysInUnitInterval) {
  Rng rng(3);
  for (const BetaParams p : {BetaParams{1, 1}, BetaParams{0.05, 0.05}, BetaParams{1e6, 1}}) {
    for (int i = 0; i < 10000; ++i) {
      const double x = sample_theta(p, rng);
      ASSERT_GE(x, 0.0);
      ASSERT_LE(x, 1.0);
    }
  }
}

TEST(SampleTheta, UniformPriorMean) {
  Rng rng(5);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += sample_theta({1, 1}, rng);
  EXPECT_NEAR(sum / n, 0.5, 0.005);
}

TEST(SampleTheta, ConcentratedPosterior) {
  Rng rng(9);
  double sum = 0.0;
  for (int i = 0; i < 1000; ++i) sum += sample_theta({1e6, 1}, rng);
  EXPECT_GT(sum / 1000, 0.999);
}

// Empirical mean and variance within 4 standard errors of the Beta moments.
TEST(SampleTheta, MomentsMatch) {
  Rng rng(13);
  const int n = 100000;
  for (const BetaParams p : {BetaParams{1, 1}, BetaParams{2, 5}, BetaParams{0.5, 0.5},
                             BetaParams{30, 4}, BetaParams{0.2, 3}}) {
    std::vector<double> x(n);
    for (double& v : x) v = sample_theta(p, rng);
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;
    double m2 = 0.0, m4 = 0.0;
    for (double v : x) {
      const double d = v - mean;
      m2 += d * d;
      m4 += d * d * d * d;
    }
    m2 /= n - 1;
    m4 /= n;
    const double true_var = beta_variance(p);
    EXPECT_NEAR(mean, beta_mean(p), 4.0 * std::sqrt(true_var / n)) << p.alpha << "," << p.beta;
    const double var_se = std::sqrt((m4 - m2 * m2) / n);
    EXPECT_NEAR(m2, true_var, 4.0 * var_se) << p.alpha << "," << p.beta;
  }
}

}  // namespace
}  // namespace cts
