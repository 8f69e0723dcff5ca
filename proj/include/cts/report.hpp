#pragma once

#include <string>

#include "json.hpp"

#include "cts/experiment.hpp"

namespace cts {

/// Aggregate results plus the full configuration (defaults included), in a
/// stable key order so identical runs serialize byte-identically.
nlohmann::ordered_json summary_json(const ExperimentConfig& config, const ExperimentResult& result);

/// One row per policy with mean and standard error of the selected metrics.
std::string summary_csv(const ExperimentConfig& config, const ExperimentResult& result);

/// Human-readable table; totals are shown x10^-3 unless normalized per pull.
std::string summary_table(const ExperimentConfig& config, const ExperimentResult& result);

/// Writes summary.json and summary.csv into config.out_dir.
void write_summary(const ExperimentConfig& config, const ExperimentResult& result);

}  // namespace cts
