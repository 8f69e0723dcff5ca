#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cts/environment.hpp"

namespace cts {

struct ClickLogRow {
  std::int64_t tick = 0;
  std::string article;
  int click = 0;
};

/// Impressions from a `tick,article_id,click` CSV.
struct ClickLog {
  std::vector<ClickLogRow> rows;

  /// Throws DataError naming the source and line on malformed input.
  static ClickLog parse(std::istream& in, const std::string& source);
  static ClickLog load(const std::filesystem::path& path);
};

struct ClickLogOptions {
  std::size_t articles = 5;
  std::vector<std::string> article_ids;  // overrides the overlap selection
  std::int64_t window = 1000;
};

/// Greedy maximal-overlap choice: start from the article with the longest
/// lifetime, then repeatedly add the article that keeps the common time range
/// longest. Ties prefer more impressions, then the smaller id.
std::vector<std::string> select_overlapping_articles(const ClickLog& log, std::size_t count);

/// Simulated bandit over the selected articles' windowed click-through rates.
///
/// The common time range of the articles is cut into windows of
/// `options.window` ticks; each arm's mean in a window is the article's
/// empirical click rate there. Empty windows carry the previous estimate, and
/// an empty first window falls back to the article's rate over the whole log.
/// One environment step is one tick.
class ClickLogEnvironment final : public Environment {
 public:
  ClickLogEnvironment(const ClickLog& log, ClickLogOptions options);

  std::string name() const override { return "clicklog"; }
  std::size_t arm_count() const override { return articles_.size(); }
  void advance(Rng& rng) override;
  EnvStep pull(std::size_t arm, Rng& rng) override;
  std::span<const double> means() const override;
  std::optional<std::size_t> length() const override { return ticks_; }
  bool normalize_by_pulls() const override { return true; }

  const std::vector<std::string>& articles() const { return articles_; }
  std::int64_t start_tick() const { return start_; }
  std::size_t window_count() const { return ctr_.size(); }
  /// Estimated rates of every arm in window w.
  std::span<const double> window_rates(std::size_t w) const { return ctr_[w]; }

 private:
  std::vector<std::string> articles_;
  std::int64_t start_ = 0;
  std::int64_t window_ = 1000;
  std::size_t ticks_ = 0;
  std::vector<std::vector<double>> ctr_;
  std::size_t tick_ = 0;
  bool started_ = false;
};

/// `timestamp,ask` rows; timestamps are epoch integers or ISO-8601 and are
/// stored in milliseconds.
struct PriceSeries {
  std::vector<std::int64_t> timestamps;
  std::vector<double> asks;

  static PriceSeries parse(std::istream& in, const std::string& source);
  static PriceSeries load(const std::filesystem::path& path);
};

/// Parses an epoch integer (seconds) or an ISO-8601 date-time
/// (YYYY-MM-DD[T| ]HH:MM[:SS[.fff]][Z]) into epoch milliseconds.
std::int64_t parse_timestamp_ms(std::string_view text);

/// Two-armed binary-option bandit over a price series.
///
/// At tick t arm 0 (long) pays 1 iff ask(t + horizon) > ask(t) and arm 1
/// (short) pays 1 iff ask(t + horizon) < ask(t); equal prices pay nothing.
/// There is no oracle, and rewards use no randomness.
class ForexEnvironment final : public Environment {
 public:
  ForexEnvironment(PriceSeries series, std::size_t horizon = 100);

  std::string name() const override { return "forex"; }
  std::size_t arm_count() const override { return 2; }
  void advance(Rng& rng) override;
  EnvStep pull(std::size_t arm, Rng& rng) override;
  std::optional<std::size_t> length() const override {
    return series_.asks.size() - horizon_;
  }

  /// Reward arm `arm` would receive at tick t.
  int reward_at(std::size_t t, std::size_t arm) const;

 private:
  PriceSeries series_;
  std::size_t horizon_;
  std::size_t tick_ = 0;
  bool started_ = false;
};

}  // namespace cts
