#pragma once

#include <cstddef>
#include <span>

#include "cts/environment.hpp"

namespace cts {

/// Cumulative gap to the best mean and count of suboptimal pulls. The
/// indicator compares mean values, so pulling any of several tied best arms
/// counts as optimal.
struct RegretTotals {
  double mean_gap = 0.0;
  double mistakes = 0.0;
};

/// Sums over a step stream; throws Error("metric unavailable for replay") if
/// any step lacks oracle fields.
RegretTotals accumulate_regret(std::span<const EnvStep> steps);

/// Streaming form of accumulate_regret that also counts errors, 1 - reward,
/// which is defined with or without an oracle.
class MetricAccumulator {
 public:
  void add(const EnvStep& step);

  std::size_t steps() const { return steps_; }
  bool has_oracle() const { return oracle_steps_ == steps_; }
  /// Throws Error("metric unavailable for replay") without oracle fields.
  RegretTotals regret() const;
  double errors() const { return errors_; }

 private:
  std::size_t steps_ = 0;
  std::size_t oracle_steps_ = 0;
  RegretTotals totals_;
  double errors_ = 0.0;
};

struct Summary {
  double mean = 0.0;
  double std_error = 0.0;
  bool single_sample = false;  // standard error undefined, reported as 0
};

/// Mean and standard error (n - 1 sample deviation over sqrt(n)).
Summary aggregate(std::span<const double> totals);

}  // namespace cts
