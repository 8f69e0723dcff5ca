#include "cts/report.hpp"

#include <fmt/format.h>

#include <fstream>

#include "cts/error.hpp"

namespace cts {
namespace {

using nlohmann::ordered_json;

ordered_json summary_value(const std::optional<Summary>& s) {
  if (!s) return nullptr;
  return ordered_json{{"mean", s->mean}, {"std_error", s->std_error}};
}

bool wants_gap(Metric m) { return m == Metric::eq4 || m == Metric::both; }
bool wants_mistakes(Metric m) { return m == Metric::eq5 || m == Metric::both; }

ordered_json config_json(const ExperimentConfig& c) {
  const EnvironmentSpec& e = c.env;
  const PolicyConfig& p = c.policy;
  ordered_json env{{"name", e.name},
                   {"arms", e.arm_count},
                   {"switch_rate", e.switch_rate},
                   {"sigma2", e.sigma2},
                   {"waveforms", e.waveforms},
                   {"clicklog", e.clicklog},
                   {"articles", e.articles},
                   {"articles_count", e.articles_count},
                   {"window", e.window},
                   {"forex", e.forex},
                   {"horizon_ticks", e.horizon_ticks}};
  ordered_json policy{{"particles", p.cap},
                      {"survivors", p.survivors},
                      {"gamma", p.gamma ? ordered_json(*p.gamma) : ordered_json(nullptr)},
                      {"alpha0", p.alpha0},
                      {"beta0", p.beta0},
                      {"copy_source", p.copy_source == CopySource::uniform ? "uniform" : "weighted"},
                      {"discount", p.discount},
                      {"xi", p.xi},
                      {"reward_bound", p.reward_bound}};
  return ordered_json{{"environment", env},
                      {"policies", c.policies},
                      {"policy", policy},
                      {"horizon", c.horizon},
                      {"repetitions", c.repetitions},
                      {"seed", c.base_seed},
                      {"metric", metric_name(c.metric)},
                      {"heatmap_every", c.heatmap_every},
                      {"record_steps", c.record_steps}};
}

}  // namespace

ordered_json summary_json(const ExperimentConfig& config, const ExperimentResult& result) {
  ordered_json results = ordered_json::array();
  for (const PolicyResult& pr : result.policies) {
    ordered_json reps = ordered_json::array();
    for (const RepetitionTotals& t : pr.repetitions) {
      reps.push_back(ordered_json{
          {"steps", t.steps},
          {"regret", t.regret ? ordered_json(t.regret->mean_gap) : ordered_json(nullptr)},
          {"mistakes", t.regret ? ordered_json(t.regret->mistakes) : ordered_json(nullptr)},
          {"errors", t.errors}});
    }
    results.push_back(ordered_json{{"policy", pr.policy},
                                   {"normalized", pr.normalized},
                                   {"regret", summary_value(pr.mean_gap)},
                                   {"mistakes", summary_value(pr.mistakes)},
                                   {"errors", summary_value(pr.errors)},
                                   {"single_repetition_warning", pr.errors.single_sample},
                                   {"repetitions", reps}});
  }
  return ordered_json{{"config", config_json(config)},
                      {"steps", result.steps},
                      {"arms", result.arm_count},
                      {"results", results}};
}

std::string summary_csv(const ExperimentConfig& config, const ExperimentResult& result) {
  std::string out = "policy";
  const Metric m = config.metric;
  if (wants_gap(m)) out += ",regret_mean,regret_se";
  if (wants_mistakes(m)) out += ",mistakes_mean,mistakes_se";
  if (m == Metric::error) out += ",errors_mean,errors_se";
  out += '\n';
  auto cells = [](const std::optional<Summary>& s) {
    return s ? fmt::format(",{},{}", s->mean, s->std_error) : std::string(",,");
  };
  for (const PolicyResult& pr : result.policies) {
    out += pr.policy;
    if (wants_gap(m)) out += cells(pr.mean_gap);
    if (wants_mistakes(m)) out += cells(pr.mistakes);
    if (m == Metric::error) out += cells(pr.errors);
    out += '\n';
  }
  return out;
}

std::string summary_table(const ExperimentConfig& config, const ExperimentResult& result) {
  const Metric m = config.metric;
  const bool normalized = !result.policies.empty() && result.policies.front().normalized;
  const double scale = normalized ? 1.0 : 1e-3;
  std::string out = fmt::format("{} steps x {} repetitions, {} ({})\n", result.steps,
                                config.repetitions, config.env.name,
                                normalized ? "per pull" : "x10^-3 +- std. error");
  out += fmt::format("{:<16}", "policy");
  if (wants_gap(m)) out += fmt::format("{:>22}", "regret");
  if (wants_mistakes(m)) out += fmt::format("{:>22}", "mistakes");
  if (m == Metric::error) out += fmt::format("{:>22}", "errors");
  out += '\n';
  auto cell = [&](const std::optional<Summary>& s) {
    if (!s) return fmt::format("{:>22}", "n/a");
    return fmt::format("{:>22}", fmt::format("{:.3f} +- {:.3f}", s->mean * scale, s->std_error * scale));
  };
  for (const PolicyResult& pr : result.policies) {
    out += fmt::format("{:<16}", pr.policy);
    if (wants_gap(m)) out += cell(pr.mean_gap);
    if (wants_mistakes(m)) out += cell(pr.mistakes);
    if (m == Metric::error) out += cell(pr.errors);
    out += '\n';
  }
  if (config.repetitions == 1) out += "warning: single repetition, standard errors reported as 0\n";
  return out;
}

void write_summary(const ExperimentConfig& config, const ExperimentResult& result) {
  std::filesystem::create_directories(config.out_dir);
  const auto json_path = config.out_dir / "summary.json";
  std::ofstream json(json_path, std::ios::binary);
  if (!json) throw DataError(json_path.string() + ": cannot write file");
  json << summary_json(config, result).dump(2) << '\n';
  const auto csv_path = config.out_dir / "summary.csv";
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw DataError(csv_path.string() + ": cannot write file");
  csv << summary_csv(config, result);
}

}  // namespace cts
