#include "cts/heatmap.hpp"

#include <fmt/format.h>

#include "cts/error.hpp"

namespace cts {

HeatmapExporter::HeatmapExporter(const Policy& policy, std::size_t every,
                                 std::size_t theta_columns)
    : every_(every), theta_columns_(theta_columns) {
  const auto posteriors = policy.runlength_posteriors();
  if (posteriors.empty()) throw Error("unsupported policy");
  if (every_ == 0) throw ConfigError("heatmap period must be positive");
  grids_.resize(posteriors.size());
  for (auto& grid : grids_) {
    grid << "t,runlength,weight";
    for (std::size_t j = 0; j < theta_columns_; ++j) grid << ",theta_" << j;
    grid << '\n';
  }
}

void HeatmapExporter::on_step(std::size_t t, const Policy& policy, std::span<const double> theta) {
  if (t % every_ == 0) snapshot(t, policy, theta);
}

void HeatmapExporter::snapshot(std::size_t t, const Policy& policy, std::span<const double> theta) {
  const auto posteriors = policy.runlength_posteriors();
  std::string theta_cells;
  for (std::size_t j = 0; j < theta_columns_; ++j) {
    theta_cells += j < theta.size() ? fmt::format(",{}", theta[j]) : ",";
  }
  for (std::size_t m = 0; m < grids_.size(); ++m) {
    for (const RunlengthMass& mass : posteriors[m]) {
      grids_[m] << fmt::format("{},{},{}", t, mass.runlength, mass.weight) << theta_cells << '\n';
    }
  }
}

std::size_t mode_runlength(std::span<const RunlengthMass> distribution) {
  if (distribution.empty()) throw Error("uninitialized");
  const RunlengthMass* best = &distribution.front();
  for (const RunlengthMass& m : distribution) {
    if (m.weight > best->weight || (m.weight == best->weight && m.runlength < best->runlength)) {
      best = &m;
    }
  }
  return best->runlength;
}

}  // namespace cts
