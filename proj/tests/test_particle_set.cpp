#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "cts/error.hpp"
#include "cts/particle_set.hpp"
#include "cts/resampling.hpp"
#include "oracles.hpp"

namespace cts {
namespace {

using testing::Observation;

Particle make(std::size_t r, double w, std::vector<BetaParams> arms,
              std::optional<std::size_t> a = std::nullopt) {
  return Particle{r, w, std::move(arms), a};
}

double weight_of(const ParticleSet& set, std::size_t runlength) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set.runlength(i) == runlength) return set.weight(i);
  }
  return 0.0;
}

double weight_of(const ParticleSet& set, std::size_t runlength, std::size_t switches) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set.runlength(i) == runlength && set.switch_count(i) == switches) return set.weight(i);
  }
  return 0.0;
}

double total_weight(const ParticleSet& set) {
  return std::accumulate(set.weights().begin(), set.weights().end(), 0.0);
}

void expect_unique_keys(const ParticleSet& set) {
  std::set<std::pair<std::size_t, std::size_t>> keys;
  for (std::size_t i = 0; i < set.size(); ++i) {
    EXPECT_TRUE(keys.emplace(set.runlength(i), set.switch_count(i).value_or(0)).second);
  }
}

TEST(GrowObserved, SingleParticleSplitsByHazard) {
  ParticleSet set(2);
  set.grow_observed(0, 1, 0.1);
  ASSERT_EQ(set.size(), 2u);
  EXPECT_NEAR(weight_of(set, 1), 0.9, 1e-15);
  EXPECT_NEAR(weight_of(set, 0), 0.1, 1e-15);
  // Arm models are not touched by the change model update.
  for (std::size_t i = 0; i < set.size(); ++i) EXPECT_EQ(set.arms(i)[0], (BetaParams{1, 1}));
}

TEST(GrowObserved, ZeroHazardCreatesNoFreshParticle) {
  ParticleSet set(2);
  set.grow_observed(0, 1, 0.0);
  ASSERT_EQ(set.size(), 1u);
  EXPECT_EQ(set.runlength(0), 1u);
  EXPECT_EQ(set.weight(0), 1.0);
}

TEST(GrowObserved, TwoParticleHandExample) {
  ParticleSet set(1, {make(2, 0.5, {{3, 1}}), make(0, 0.5, {{1, 1}})}, 2);
  set.grow_observed(0, 1, 0.1);
  ASSERT_EQ(set.size(), 3u);
  EXPECT_NEAR(weight_of(set, 3), 0.54, 1e-12);
  EXPECT_NEAR(weight_of(set, 1), 0.36, 1e-12);
  EXPECT_NEAR(weight_of(set, 0), 0.10, 1e-12);
}

TEST(GrowObserved, FullHazardPoolsEverythingAtZero) {
  ParticleSet set(1, {make(2, 0.5, {{3, 1}}), make(0, 0.5, {{1, 1}})}, 2);
  for (int step = 0; step < 5; ++step) {
    set.grow_observed(0, step % 2, 1.0);
    ASSERT_EQ(set.size(), 1u);
    EXPECT_EQ(set.runlength(0), 0u);
    EXPECT_EQ(set.weight(0), 1.0);
  }
}

TEST(GrowObserved, Errors) {
  ParticleSet set(2);
  EXPECT_THROW(set.grow_observed(2, 1, 0.1), std::out_of_range);
  EXPECT_THROW(set.grow_observed(0, 1, 1.5), std::invalid_argument);
  EXPECT_THROW(set.grow_hazard_learning(0, 1, true), Error);
  EXPECT_THROW(ParticleSet(1, std::vector<Particle>{}, 0), Error);
}

TEST(GrowUnobserved, HandExamples) {
  ParticleSet a(1, {make(5, 1.0, {{1, 1}})}, 5);
  a.grow_unobserved(0.1);
  EXPECT_NEAR(weight_of(a, 6), 0.9, 1e-15);
  EXPECT_NEAR(weight_of(a, 0), 0.1, 1e-15);

  ParticleSet b(1, {make(1, 0.4, {{2, 1}}), make(0, 0.6, {{1, 1}})}, 1);
  b.grow_unobserved(0.5);
  EXPECT_NEAR(weight_of(b, 2), 0.2, 1e-15);
  EXPECT_NEAR(weight_of(b, 1), 0.3, 1e-15);
  EXPECT_NEAR(weight_of(b, 0), 0.5, 1e-15);
  // Hyperparameters carry into the continuations unchanged.
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b.runlength(i) == 2) EXPECT_EQ(b.arms(i)[0], (BetaParams{2, 1}));
  }
}

TEST(GrowUnobserved, ZeroHazardShiftsRunlengths) {
  ParticleSet set(1, {make(3, 0.25, {{1, 2}}), make(1, 0.75, {{1, 1}})}, 3);
  set.grow_unobserved(0.0);
  EXPECT_EQ(set.size(), 2u);
  EXPECT_DOUBLE_EQ(weight_of(set, 4), 0.25);
  EXPECT_DOUBLE_EQ(weight_of(set, 2), 0.75);
}

TEST(GrowUnobserved, GeometricTailClosedForm) {
  const double gamma = 0.1;
  const std::size_t steps = 60;
  ParticleSet set(1);
  for (std::size_t s = 0; s < steps; ++s) set.grow_unobserved(gamma);
  for (std::size_t r = 0; r < steps; ++r) {
    EXPECT_NEAR(weight_of(set, r), gamma * std::pow(1 - gamma, r), 1e-12);
  }
  EXPECT_NEAR(weight_of(set, steps), std::pow(1 - gamma, steps), 1e-12);
}

TEST(GrowHazardLearning, FirstStepObserved) {
  ParticleSet set(1, ParticleSetOptions{.mode = HazardMode::learned});
  set.grow_hazard_learning(0, 1, true);
  ASSERT_EQ(set.size(), 2u);
  EXPECT_NEAR(weight_of(set, 1, 0), 0.5, 1e-15);
  EXPECT_NEAR(weight_of(set, 0, 1), 0.5, 1e-15);
  EXPECT_EQ(set.elapsed(), 1u);
}

TEST(GrowHazardLearning, FirstStepUnobserved) {
  ParticleSet set(1, ParticleSetOptions{.mode = HazardMode::learned});
  set.grow_hazard_learning(0, 0, false);
  EXPECT_NEAR(weight_of(set, 1, 0), 0.5, 1e-15);
  EXPECT_NEAR(weight_of(set, 0, 1), 0.5, 1e-15);
}

// Second step from the two-particle state. Expected weights come from the
// dense grid oracle on the equivalent tape (reward 1 twice on one arm).
TEST(GrowHazardLearning, SecondStepMatchesGridOracle) {
  const ParticleSetOptions options{.mode = HazardMode::learned};
  ParticleSet set(1, {make(1, 0.5, {{2, 1}}, 0), make(0, 0.5, {{1, 1}}, 1)}, 1, options);
  set.grow_hazard_learning(0, 1, true);
  ASSERT_EQ(set.size(), 4u);

  const auto grid = testing::dense_hazard_grid({{0, 1}, {0, 1}}, {true, true});
  // Unnormalized 2/9, 1/9, 1/12, 1/6 over a total of 7/12.
  EXPECT_NEAR(weight_of(set, 2, 0), 8.0 / 21.0, 1e-12);
  EXPECT_NEAR(weight_of(set, 0, 1), 4.0 / 21.0, 1e-12);
  EXPECT_NEAR(weight_of(set, 1, 1), 3.0 / 21.0, 1e-12);
  EXPECT_NEAR(weight_of(set, 0, 2), 6.0 / 21.0, 1e-12);
  for (std::size_t r = 0; r <= 2; ++r) {
    for (std::size_t a = 0; a <= 2; ++a) {
      EXPECT_NEAR(weight_of(set, r, a), grid[r][a], 1e-12) << r << "," << a;
    }
  }
}

TEST(GrowHazardLearning, MergesFreshParticlesWithEqualSwitchCount) {
  const ParticleSetOptions options{.mode = HazardMode::learned};
  ParticleSet set(1, {make(2, 0.3, {{2, 2}}, 1), make(1, 0.7, {{1, 2}}, 1)}, 3, options);
  set.grow_hazard_learning(0, 0, true);
  // Both particles have a = 1, so their change messages land on (0, 2).
  EXPECT_EQ(set.size(), 3u);
  expect_unique_keys(set);
}

TEST(GrowHazardLearning, MarginalMatchesDenseGrid) {
  Rng rng(99);
  std::vector<Observation> tape;
  std::vector<bool> observed;
  const ParticleSetOptions options{.mode = HazardMode::learned};
  ParticleSet set(3, options);
  for (int s = 0; s < 50; ++s) {
    const Observation o{rng() % 3, static_cast<int>(rng() % 2)};
    const bool seen = rng() % 5 != 0;
    tape.push_back(o);
    observed.push_back(seen);
    set.grow_hazard_learning(o.arm, o.reward, seen);
    if (seen) {
      set.apply_reward(o.arm, o.reward);
    } else {
      // No data reaches the arm models on a dropped-likelihood step.
      tape.back().arm = 1000;
    }
    ASSERT_NEAR(total_weight(set), 1.0, 1e-12);
    expect_unique_keys(set);
  }
  const auto grid = testing::dense_hazard_grid(tape, observed);
  const auto marginal = set.runlength_marginal();
  double checked = 0.0;
  for (std::size_t r = 0; r <= 50; ++r) {
    double expected = 0.0;
    for (double v : grid[r]) expected += v;
    double got = 0.0;
    for (const auto& m : marginal)
      if (m.runlength == r) got = m.weight;
    EXPECT_NEAR(got, expected, 1e-9) << "runlength " << r;
    checked += got;
  }
  EXPECT_NEAR(checked, 1.0, 1e-12);
}

TEST(ApplyReward, UpdatesContinuationsOnly) {
  ParticleSet set(2);
  set.grow_observed(0, 1, 0.1);
  set.apply_reward(0, 1);
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set.runlength(i) == 1) {
      EXPECT_EQ(set.arms(i)[0], (BetaParams{2, 1}));
    } else {
      EXPECT_EQ(set.arms(i)[0], (BetaParams{1, 1}));
    }
    EXPECT_EQ(set.arms(i)[1], (BetaParams{1, 1}));
  }
}

TEST(ExactInference, MatchesDenseOracleWithoutResampling) {
  Rng rng(2024);
  const double gamma = 0.01;
  std::vector<Observation> tape;
  ParticleSet set(2, ParticleSetOptions{.cap = 500});
  for (int t = 0; t < 200; ++t) {
    Observation o{rng() % 2, 0};
    o.reward = uniform01(rng) < (t < 100 ? 0.8 : 0.2) ? 1 : 0;
    tape.push_back(o);
    const std::size_t before = set.size();
    std::set<std::size_t> expected_support{0};
    for (std::size_t i = 0; i < before; ++i) expected_support.insert(set.runlength(i) + 1);
    set.grow_observed(o.arm, o.reward, gamma);
    set.apply_reward(o.arm, o.reward);
    std::set<std::size_t> support;
    for (std::size_t i = 0; i < set.size(); ++i) support.insert(set.runlength(i));
    ASSERT_EQ(support, expected_support);
    ASSERT_NEAR(total_weight(set), 1.0, 1e-12);
  }
  const auto dense = testing::dense_runlength_posterior(tape, gamma);
  for (std::size_t r = 0; r < dense.size(); ++r) {
    EXPECT_NEAR(weight_of(set, r), dense[r], 1e-9) << "runlength " << r;
  }
}

TEST(SampleParticle, Degenerate) {
  Rng rng(1);
  ParticleSet single(1, {make(4, 1.0, {{2, 3}})}, 4);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(single.sample_particle(rng).runlength, 4u);

  ParticleSet lopsided(1, {make(1, 1.0, {{1, 1}}), make(0, 0.0, {{1, 1}})}, 1);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(lopsided.sample_index(rng), 0u);
}

TEST(SampleParticle, FrequenciesMatchWeights) {
  Rng rng(17);
  ParticleSet set(1, {make(1, 0.3, {{1, 1}}), make(0, 0.7, {{1, 1}})}, 1);
  int first = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) first += set.sample_index(rng) == 0;
  EXPECT_NEAR(static_cast<double>(first) / n, 0.3, 0.01);
}

TEST(Resample, BoundsSizeAndKeepsNormalization) {
  Rng rng(31);
  ParticleSet set(2, ParticleSetOptions{.cap = 20});
  for (int t = 0; t < 500; ++t) {
    set.grow_observed(t % 2, static_cast<int>(rng() % 2), 0.05);
    set.apply_reward(t % 2, t % 3 == 0);
    if (set.at_capacity()) set.resample(default_survivors(set.cap()), rng);
    ASSERT_LE(set.size(), 20u);
    ASSERT_NEAR(total_weight(set), 1.0, 1e-12);
    expect_unique_keys(set);
    for (std::size_t i = 0; i < set.size(); ++i) ASSERT_LE(set.runlength(i), set.elapsed());
  }
  EXPECT_THROW(set.resample(set.size(), rng), NoResamplingNeeded);
}

TEST(Resample, DefaultSurvivorCount) {
  EXPECT_EQ(default_survivors(100), 90u);
  EXPECT_EQ(default_survivors(10), 9u);
  EXPECT_EQ(default_survivors(11), 9u);
  EXPECT_EQ(default_survivors(2), 1u);
}

}  // namespace
}  // namespace cts
