#include "cts/particle_set.hpp"

#include <algorithm>
#include <stdexcept>

#include "cts/error.hpp"
#include "cts/resampling.hpp"

namespace cts {
namespace {

void check_hazard(double hazard) {
  if (!(hazard >= 0.0 && hazard <= 1.0)) {
    throw std::invalid_argument("switching rate must lie in [0, 1]");
  }
}

void check_prior(BetaParams prior) {
  if (!(prior.alpha > 0.0 && prior.beta > 0.0)) {
    throw std::invalid_argument("prior pseudo-counts must be positive");
  }
}

}  // namespace

std::size_t default_survivors(std::size_t cap) {
  if (cap == kUnboundedCap) return cap;
  const std::size_t margin = (cap + 9) / 10;
  return std::max<std::size_t>(1, cap - margin);
}

ParticleSet::ParticleSet(std::size_t arm_count, ParticleSetOptions options)
    : arm_count_(arm_count), options_(options) {
  if (arm_count_ == 0) throw std::invalid_argument("arm count must be positive");
  if (options_.cap < 1) throw std::invalid_argument("particle cap must be positive");
  check_prior(options_.prior);
  runlengths_.push_back(0);
  weights_.push_back(1.0);
  if (options_.mode == HazardMode::learned) switch_counts_.push_back(0);
  arms_.assign(arm_count_, options_.prior);
  fresh_begin_ = size();
}

ParticleSet::ParticleSet(std::size_t arm_count, std::vector<Particle> particles,
                         std::size_t elapsed, ParticleSetOptions options)
    : arm_count_(arm_count), options_(options), elapsed_(elapsed) {
  if (arm_count_ == 0) throw std::invalid_argument("arm count must be positive");
  check_prior(options_.prior);
  if (particles.empty()) throw Error("uninitialized");
  if (particles.size() > options_.cap) throw std::invalid_argument("more particles than cap");

  const bool learned = options_.mode == HazardMode::learned;
  std::vector<std::pair<std::size_t, std::size_t>> keys;
  double total = 0.0;
  for (const Particle& p : particles) {
    if (p.arms.size() != arm_count_) throw std::invalid_argument("particle arm count mismatch");
    if (p.switch_count.has_value() != learned) throw Error("mode mismatch");
    if (!(p.weight >= 0.0)) throw std::invalid_argument("particle weight must be nonnegative");
    if (p.runlength > elapsed_) throw std::invalid_argument("runlength exceeds elapsed steps");
    keys.emplace_back(p.runlength, p.switch_count.value_or(0));
    total += p.weight;
  }
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) {
    throw std::invalid_argument("duplicate particle key");
  }
  if (!(total > 0.0)) throw Error("degenerate likelihood");

  for (Particle& p : particles) {
    runlengths_.push_back(p.runlength);
    weights_.push_back(p.weight / total);
    if (learned) switch_counts_.push_back(*p.switch_count);
    arms_.insert(arms_.end(), p.arms.begin(), p.arms.end());
  }
  fresh_begin_ = size();
}

std::optional<std::size_t> ParticleSet::switch_count(std::size_t i) const {
  if (options_.mode != HazardMode::learned) return std::nullopt;
  return switch_counts_[i];
}

Particle ParticleSet::particle(std::size_t i) const {
  auto view = arms(i);
  return Particle{runlengths_[i], weights_[i], {view.begin(), view.end()}, switch_count(i)};
}

std::vector<Particle> ParticleSet::particles() const {
  std::vector<Particle> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(particle(i));
  return out;
}

void ParticleSet::require_nonempty() const {
  if (empty()) throw Error("uninitialized");
}

void ParticleSet::push_fresh(double weight, std::size_t switch_count) {
  runlengths_.push_back(0);
  weights_.push_back(weight);
  if (options_.mode == HazardMode::learned) switch_counts_.push_back(switch_count);
  arms_.insert(arms_.end(), arm_count_, options_.prior);
}

void ParticleSet::drop_zero_and_normalize(std::size_t fresh_begin) {
  const bool learned = options_.mode == HazardMode::learned;
  std::size_t out = 0;
  std::size_t new_fresh_begin = 0;
  double total = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    if (weights_[i] <= 0.0) continue;
    if (i < fresh_begin) ++new_fresh_begin;
    if (out != i) {
      runlengths_[out] = runlengths_[i];
      weights_[out] = weights_[i];
      if (learned) switch_counts_[out] = switch_counts_[i];
      std::copy_n(arms_.begin() + i * arm_count_, arm_count_, arms_.begin() + out * arm_count_);
    }
    total += weights_[out];
    ++out;
  }
  if (out == 0 || !(total > 0.0)) throw Error("degenerate likelihood");
  runlengths_.resize(out);
  weights_.resize(out);
  if (learned) switch_counts_.resize(out);
  arms_.resize(out * arm_count_);
  for (double& w : weights_) w /= total;
  fresh_begin_ = new_fresh_begin;
  work_ += out;
}

void ParticleSet::grow_constant_rate(std::optional<std::size_t> arm, int reward, double hazard) {
  require_nonempty();
  if (options_.mode != HazardMode::known) throw Error("mode mismatch");
  check_hazard(hazard);
  if (arm) {
    check_reward(reward);
    if (*arm >= arm_count_) throw std::out_of_range("arm index out of range");
  }

  const std::size_t n = size();
  double pooled = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lik = arm ? predictive_likelihood(arms_[i * arm_count_ + *arm], reward) : 1.0;
    const double mass = lik * weights_[i];
    pooled += hazard * mass;
    weights_[i] = (1.0 - hazard) * mass;
    ++runlengths_[i];
  }
  work_ += n;
  if (pooled > 0.0) push_fresh(pooled, 0);
  drop_zero_and_normalize(n);
  ++elapsed_;
}

void ParticleSet::grow_observed(std::size_t arm, int reward, double hazard) {
  grow_constant_rate(arm, reward, hazard);
}

void ParticleSet::grow_unobserved(double hazard) { grow_constant_rate(std::nullopt, 0, hazard); }

void ParticleSet::grow_hazard_learning(std::size_t arm, int reward, bool observed) {
  require_nonempty();
  if (options_.mode != HazardMode::learned) throw Error("mode mismatch");
  if (observed) {
    check_reward(reward);
    if (arm >= arm_count_) throw std::out_of_range("arm index out of range");
  }

  const double t = static_cast<double>(elapsed_);
  const std::size_t n = size();
  scratch_fresh_.clear();
  for (std::size_t i = 0; i < n; ++i) {
    const double lik =
        observed ? predictive_likelihood(arms_[i * arm_count_ + arm], reward) : 1.0;
    const double mass = lik * weights_[i];
    const double switches = static_cast<double>(switch_counts_[i]);
    weights_[i] = (t - switches + 1.0) / (t + 2.0) * mass;
    scratch_fresh_.emplace_back(switch_counts_[i] + 1, (switches + 1.0) / (t + 2.0) * mass);
    ++runlengths_[i];
  }
  work_ += n;

  // New runlength-zero particles share the prior, so equal keys merge exactly.
  std::stable_sort(scratch_fresh_.begin(), scratch_fresh_.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < scratch_fresh_.size();) {
    const std::size_t key = scratch_fresh_[i].first;
    double mass = 0.0;
    for (; i < scratch_fresh_.size() && scratch_fresh_[i].first == key; ++i) {
      mass += scratch_fresh_[i].second;
    }
    if (mass > 0.0) push_fresh(mass, key);
  }
  drop_zero_and_normalize(n);
  ++elapsed_;
}

void ParticleSet::apply_reward(std::size_t arm, int reward) {
  if (arm >= arm_count_) throw std::out_of_range("arm index out of range");
  check_reward(reward);
  for (std::size_t i = 0; i < fresh_begin_; ++i) {
    BetaParams& p = arms_[i * arm_count_ + arm];
    p = posterior_update(p, reward);
  }
  work_ += fresh_begin_;
}

void ParticleSet::assign_fresh_arms(std::span<const BetaParams> source, std::size_t keep_arm) {
  if (source.size() != arm_count_) throw std::invalid_argument("source arm count mismatch");
  for (std::size_t i = fresh_begin_; i < size(); ++i) {
    for (std::size_t j = 0; j < arm_count_; ++j) {
      if (j != keep_arm) arms_[i * arm_count_ + j] = source[j];
    }
  }
  work_ += size() - fresh_begin_;
}

std::size_t ParticleSet::sample_index(Rng& rng) const {
  require_nonempty();
  if (size() == 1) {
    ++work_;
    return 0;
  }
  const double u = uniform01(rng);
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    ++work_;
    if (weights_[i] <= 0.0) continue;
    last_positive = i;
    cumulative += weights_[i];
    if (u < cumulative) return i;
  }
  return last_positive;
}

Particle ParticleSet::sample_particle(Rng& rng) const { return particle(sample_index(rng)); }

void ParticleSet::resample(std::size_t survivors, Rng& rng) {
  require_nonempty();
  if (survivors >= size()) throw NoResamplingNeeded();
  const std::vector<double> q = stratified_optimal_resample(weights_, survivors, rng);
  work_ += size();
  std::copy(q.begin(), q.end(), weights_.begin());
  drop_zero_and_normalize(fresh_begin_);
}

std::vector<RunlengthMass> ParticleSet::runlength_marginal() const {
  std::vector<RunlengthMass> mass;
  mass.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) mass.push_back({runlengths_[i], weights_[i]});
  std::sort(mass.begin(), mass.end(),
            [](const RunlengthMass& a, const RunlengthMass& b) { return a.runlength < b.runlength; });
  std::vector<RunlengthMass> merged;
  for (const RunlengthMass& m : mass) {
    if (!merged.empty() && merged.back().runlength == m.runlength) {
      merged.back().weight += m.weight;
    } else {
      merged.push_back(m);
    }
  }
  return merged;
}

}  // namespace cts
