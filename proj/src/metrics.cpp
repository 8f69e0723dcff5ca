#include "cts/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "cts/error.hpp"

namespace cts {

void MetricAccumulator::add(const EnvStep& step) {
  ++steps_;
  errors_ += 1.0 - step.reward;
  if (step.oracle) {
    ++oracle_steps_;
    totals_.mean_gap += step.oracle->best_mean - step.oracle->chosen_mean;
    if (step.oracle->best_mean != step.oracle->chosen_mean) totals_.mistakes += 1.0;
  }
}

RegretTotals MetricAccumulator::regret() const {
  if (!has_oracle()) throw Error("metric unavailable for replay");
  return totals_;
}

RegretTotals accumulate_regret(std::span<const EnvStep> steps) {
  MetricAccumulator acc;
  for (const EnvStep& s : steps) acc.add(s);
  return acc.regret();
}

Summary aggregate(std::span<const double> totals) {
  if (totals.empty()) throw std::invalid_argument("aggregate needs at least one total");
  const double n = static_cast<double>(totals.size());
  double sum = 0.0;
  for (const double v : totals) sum += v;
  const double mean = sum / n;
  if (totals.size() == 1) return Summary{mean, 0.0, true};
  double squares = 0.0;
  for (const double v : totals) squares += (v - mean) * (v - mean);
  return Summary{mean, std::sqrt(squares / (n - 1.0)) / std::sqrt(n), false};
}

}  // namespace cts
