#pragma once

#include <cstddef>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "cts/environment.hpp"
#include "cts/policy.hpp"

namespace cts {

/// Runlength-posterior snapshots as sparse CSV grids.
///
/// One grid per change-point model of the policy (one for global structures,
/// one per arm otherwise). Rows are `t,runlength,weight` followed by
/// `theta_0..theta_{k-1}` when the environment exposes its means; only
/// runlengths with mass are emitted.
class HeatmapExporter {
 public:
  /// Throws Error("unsupported policy") for policies without runlength state.
  HeatmapExporter(const Policy& policy, std::size_t every, std::size_t theta_columns);

  /// Records a snapshot when t is a multiple of the schedule period.
  void on_step(std::size_t t, const Policy& policy, std::span<const double> theta);
  void snapshot(std::size_t t, const Policy& policy, std::span<const double> theta);

  std::size_t model_count() const { return grids_.size(); }
  std::string grid(std::size_t model) const { return grids_[model].str(); }

 private:
  std::size_t every_;
  std::size_t theta_columns_;
  std::vector<std::ostringstream> grids_;
};

/// Posterior-mode runlength of one distribution (smallest runlength on ties).
std::size_t mode_runlength(std::span<const RunlengthMass> distribution);

}  // namespace cts
