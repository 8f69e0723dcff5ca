#include "cts/experiment.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <memory>
#include <mutex>
#include <thread>

#include "cts/error.hpp"
#include "cts/heatmap.hpp"

namespace cts {
namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(path.string() + ": cannot write file");
  out << content;
}

std::string oracle_cells(const EnvStep& step) {
  if (!step.oracle) return ",,";
  return fmt::format("{},{},{}", step.oracle->best_mean, step.oracle->chosen_mean,
                     step.oracle->is_optimal ? 1 : 0);
}

struct Job {
  std::size_t policy = 0;
  std::size_t repetition = 0;
};

}  // namespace

Metric parse_metric(std::string_view text) {
  if (text == "eq4") return Metric::eq4;
  if (text == "eq5") return Metric::eq5;
  if (text == "both") return Metric::both;
  if (text == "error") return Metric::error;
  throw ConfigError("unknown metric '" + std::string(text) + "'");
}

std::string_view metric_name(Metric metric) {
  switch (metric) {
    case Metric::eq4: return "eq4";
    case Metric::eq5: return "eq5";
    case Metric::both: return "both";
    case Metric::error: return "error";
  }
  return "both";
}

void ExperimentConfig::validate() const {
  if (horizon < 1) throw ConfigError("horizon must be at least 1");
  if (repetitions < 1) throw ConfigError("repetitions must be at least 1");
  if (policies.empty()) throw ConfigError("at least one policy is required");
  policy.validate();
}

std::uint64_t repetition_seed(std::uint64_t base_seed, std::size_t repetition) {
  return splitmix64(base_seed + repetition);
}

Rng environment_rng(std::uint64_t seed) { return Rng(splitmix64(seed ^ 0x656e7669726f6eULL)); }

Rng policy_rng(std::uint64_t seed) { return Rng(splitmix64(seed ^ 0x706f6c696379ULL)); }

RepetitionTotals run_repetition(Environment& env, Policy& policy, std::size_t horizon,
                                Rng& env_rng, Rng& pol_rng, const StepCallback& on_step) {
  if (policy.arm_count() != env.arm_count()) {
    throw ConfigError("policy and environment disagree on the arm count");
  }
  MetricAccumulator acc;
  for (std::size_t t = 1; t <= horizon; ++t) {
    env.advance(env_rng);
    const std::size_t arm = policy.select_arm(pol_rng);
    const EnvStep step = env.pull(arm, env_rng);
    policy.observe(arm, step.reward, pol_rng);
    acc.add(step);
    if (on_step) on_step(t, arm, step, policy, env);
  }
  RepetitionTotals totals;
  totals.steps = acc.steps();
  if (acc.has_oracle()) totals.regret = acc.regret();
  totals.errors = acc.errors();
  return totals;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const EnvironmentFactory factory(config.env);
  if (!factory.has_oracle() && config.metric != Metric::error) {
    throw ConfigError("metric unavailable for replay; use --metric error");
  }

  PolicyConfig policy_config = config.policy;
  policy_config.arm_count = factory.arm_count();
  for (const auto& name : config.policies) make_policy(name, policy_config);

  ExperimentResult result;
  result.arm_count = factory.arm_count();
  {
    Rng probe_rng(0);
    const auto probe = factory.make(probe_rng);
    result.steps = std::min(config.horizon, probe->length().value_or(config.horizon));
  }
  const bool write_outputs = !config.out_dir.empty();
  if (write_outputs) std::filesystem::create_directories(config.out_dir);

  std::vector<Job> jobs;
  for (std::size_t p = 0; p < config.policies.size(); ++p) {
    for (std::size_t r = 0; r < config.repetitions; ++r) jobs.push_back({p, r});
  }
  std::vector<RepetitionTotals> totals(jobs.size());
  std::vector<std::exception_ptr> failures(jobs.size());

  auto run_job = [&](std::size_t index) {
    const Job job = jobs[index];
    const std::string& name = config.policies[job.policy];
    const std::uint64_t seed = repetition_seed(config.base_seed, job.repetition);
    Rng env_rng = environment_rng(seed);
    Rng pol_rng = policy_rng(seed);
    const auto env = factory.make(env_rng);
    const auto policy = make_policy(name, policy_config);

    std::unique_ptr<HeatmapExporter> heatmap;
    if (write_outputs && config.heatmap_every > 0 && job.repetition == 0 &&
        is_change_point_policy(name)) {
      heatmap = std::make_unique<HeatmapExporter>(*policy, config.heatmap_every,
                                                  env->has_oracle() ? env->arm_count() : 0);
      heatmap->snapshot(0, *policy, env->means());
    }
    std::unique_ptr<std::ofstream> records;
    if (write_outputs && config.record_steps) {
      const auto path = config.out_dir / fmt::format("records_{}_rep{}.csv", name, job.repetition);
      records = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*records) throw DataError(path.string() + ": cannot write file");
      *records << "t,arm,reward,best_mean,chosen_mean,is_optimal\n";
    }

    StepCallback on_step;
    if (heatmap || records) {
      on_step = [&](std::size_t t, std::size_t arm, const EnvStep& step, const Policy& pol,
                    const Environment& e) {
        if (records) *records << fmt::format("{},{},{},", t, arm, step.reward) << oracle_cells(step) << '\n';
        if (heatmap) heatmap->on_step(t, pol, e.means());
      };
    }
    totals[index] = run_repetition(*env, *policy, result.steps, env_rng, pol_rng, on_step);

    if (heatmap) {
      for (std::size_t m = 0; m < heatmap->model_count(); ++m) {
        const std::string file = heatmap->model_count() == 1
                                     ? fmt::format("heatmap_{}.csv", name)
                                     : fmt::format("heatmap_{}_arm{}.csv", name, m);
        write_file(config.out_dir / file, heatmap->grid(m));
      }
    }
  };

  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t threads = std::min(jobs.size(), config.threads == 0 ? hw : config.threads);
  if (threads <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_job(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
          try {
            run_job(i);
          } catch (...) {
            failures[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }

  Rng probe_rng(0);
  const bool normalize = factory.make(probe_rng)->normalize_by_pulls();
  for (std::size_t p = 0; p < config.policies.size(); ++p) {
    PolicyResult pr;
    pr.policy = config.policies[p];
    pr.normalized = normalize;
    std::vector<double> gaps, mistakes, errors;
    for (std::size_t r = 0; r < config.repetitions; ++r) {
      const RepetitionTotals& t = totals[p * config.repetitions + r];
      pr.repetitions.push_back(t);
      const double scale = normalize ? 1.0 / static_cast<double>(t.steps) : 1.0;
      if (t.regret) {
        gaps.push_back(t.regret->mean_gap * scale);
        mistakes.push_back(t.regret->mistakes * scale);
      }
      errors.push_back(t.errors * scale);
    }
    if (gaps.size() == config.repetitions) {
      pr.mean_gap = aggregate(gaps);
      pr.mistakes = aggregate(mistakes);
    }
    pr.errors = aggregate(errors);
    result.policies.push_back(std::move(pr));
  }
  return result;
}

}  // namespace cts
