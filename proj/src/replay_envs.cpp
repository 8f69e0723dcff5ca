#include "cts/replay_envs.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include "cts/error.hpp"

namespace cts {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    fields.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  throw DataError(source + ":" + std::to_string(line) + ": " + what);
}

template <class T>
bool parse_number(std::string_view text, T& value) {
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

/// Reads header + rows, calling `row(fields, line_number)` for each data row.
template <class RowFn>
void read_csv(std::istream& in, const std::string& source, std::string_view header, RowFn row) {
  std::string line;
  std::size_t line_number = 0;
  bool seen_header = false;
  const auto expected = split_fields(header);
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    if (!seen_header) {
      if (fields != expected) fail(source, line_number, "expected header '" + std::string(header) + "'");
      seen_header = true;
      continue;
    }
    if (fields.size() != expected.size()) {
      fail(source, line_number, "expected " + std::to_string(expected.size()) + " fields");
    }
    row(fields, line_number);
  }
  if (!seen_header) fail(source, line_number, "missing header '" + std::string(header) + "'");
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path.string() + ": cannot open file");
  return in;
}

struct ArticleSpan {
  std::int64_t first = 0;
  std::int64_t last = 0;
  std::size_t impressions = 0;
};

std::int64_t overlap_length(std::int64_t first, std::int64_t last) {
  return last >= first ? last - first + 1 : 0;
}

}  // namespace

ClickLog ClickLog::parse(std::istream& in, const std::string& source) {
  ClickLog log;
  read_csv(in, source, "tick,article_id,click", [&](const auto& f, std::size_t line) {
    ClickLogRow row;
    if (!parse_number(f[0], row.tick)) fail(source, line, "bad tick '" + std::string(f[0]) + "'");
    if (f[1].empty()) fail(source, line, "empty article id");
    row.article = std::string(f[1]);
    if (f[2] == "0") {
      row.click = 0;
    } else if (f[2] == "1") {
      row.click = 1;
    } else {
      fail(source, line, "click must be 0 or 1, got '" + std::string(f[2]) + "'");
    }
    log.rows.push_back(std::move(row));
  });
  return log;
}

ClickLog ClickLog::load(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse(in, path.string());
}

std::vector<std::string> select_overlapping_articles(const ClickLog& log, std::size_t count) {
  std::map<std::string, ArticleSpan> spans;
  for (const ClickLogRow& row : log.rows) {
    auto [it, inserted] = spans.try_emplace(row.article, ArticleSpan{row.tick, row.tick, 0});
    ArticleSpan& s = it->second;
    s.first = std::min(s.first, row.tick);
    s.last = std::max(s.last, row.tick);
    ++s.impressions;
  }
  if (count == 0) throw ConfigError("article count must be positive");
  if (spans.size() < count) {
    throw DataError("click log has " + std::to_string(spans.size()) + " articles, " +
                    std::to_string(count) + " requested");
  }

  std::vector<std::string> chosen;
  std::int64_t first = std::numeric_limits<std::int64_t>::min();
  std::int64_t last = std::numeric_limits<std::int64_t>::max();
  while (chosen.size() < count) {
    const std::string* best = nullptr;
    std::int64_t best_len = -1;
    std::size_t best_impressions = 0;
    for (const auto& [id, s] : spans) {
      if (std::find(chosen.begin(), chosen.end(), id) != chosen.end()) continue;
      const std::int64_t len = overlap_length(std::max(first, s.first), std::min(last, s.last));
      // std::map iterates ids in ascending order, so strict comparisons keep
      // the smallest id on full ties.
      if (len > best_len || (len == best_len && s.impressions > best_impressions)) {
        best = &id;
        best_len = len;
        best_impressions = s.impressions;
      }
    }
    const ArticleSpan& s = spans.at(*best);
    first = std::max(first, s.first);
    last = std::min(last, s.last);
    chosen.push_back(*best);
  }
  return chosen;
}

ClickLogEnvironment::ClickLogEnvironment(const ClickLog& log, ClickLogOptions options)
    : window_(options.window) {
  if (window_ <= 0) throw ConfigError("click-through window must be positive");
  articles_ = options.article_ids.empty()
                  ? select_overlapping_articles(log, options.articles)
                  : options.article_ids;

  const std::size_t k = articles_.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t j = 0; j < k; ++j) {
    if (!index.emplace(articles_[j], j).second) {
      throw ConfigError("duplicate article id '" + articles_[j] + "'");
    }
  }

  std::vector<std::int64_t> first(k, std::numeric_limits<std::int64_t>::max());
  std::vector<std::int64_t> last(k, std::numeric_limits<std::int64_t>::min());
  std::vector<double> clicks(k, 0.0);
  std::vector<double> shown(k, 0.0);
  for (const ClickLogRow& row : log.rows) {
    const auto it = index.find(row.article);
    if (it == index.end()) continue;
    const std::size_t j = it->second;
    first[j] = std::min(first[j], row.tick);
    last[j] = std::max(last[j], row.tick);
    clicks[j] += row.click;
    shown[j] += 1.0;
  }
  for (std::size_t j = 0; j < k; ++j) {
    if (shown[j] == 0.0) throw DataError("article '" + articles_[j] + "' not found in click log");
  }
  start_ = *std::max_element(first.begin(), first.end());
  const std::int64_t end = *std::min_element(last.begin(), last.end());
  if (end < start_) throw DataError("selected articles do not overlap in time");
  ticks_ = static_cast<std::size_t>(end - start_ + 1);

  const std::size_t windows = (ticks_ + static_cast<std::size_t>(window_) - 1) /
                              static_cast<std::size_t>(window_);
  std::vector<std::vector<double>> win_clicks(windows, std::vector<double>(k, 0.0));
  std::vector<std::vector<double>> win_shown(windows, std::vector<double>(k, 0.0));
  for (const ClickLogRow& row : log.rows) {
    if (row.tick < start_ || row.tick > end) continue;
    const auto it = index.find(row.article);
    if (it == index.end()) continue;
    const auto w = static_cast<std::size_t>((row.tick - start_) / window_);
    win_clicks[w][it->second] += row.click;
    win_shown[w][it->second] += 1.0;
  }

  ctr_.assign(windows, std::vector<double>(k, 0.0));
  for (std::size_t j = 0; j < k; ++j) {
    double previous = clicks[j] / shown[j];
    for (std::size_t w = 0; w < windows; ++w) {
      if (win_shown[w][j] > 0.0) previous = win_clicks[w][j] / win_shown[w][j];
      ctr_[w][j] = previous;
    }
  }
}

void ClickLogEnvironment::advance(Rng&) {
  if (started_) {
    ++tick_;
  } else {
    started_ = true;
  }
  if (tick_ >= ticks_) throw Error("click log replay exhausted");
}

std::span<const double> ClickLogEnvironment::means() const {
  return ctr_[tick_ / static_cast<std::size_t>(window_)];
}

EnvStep ClickLogEnvironment::pull(std::size_t arm, Rng& rng) {
  if (arm >= articles_.size()) throw std::out_of_range("arm index out of range");
  const auto rates = means();
  const int reward = uniform01(rng) < rates[arm] ? 1 : 0;
  return EnvStep{reward, make_oracle(rates, arm)};
}

std::int64_t parse_timestamp_ms(std::string_view text) {
  std::int64_t epoch = 0;
  if (parse_number(text, epoch)) return epoch * 1000;

  // YYYY-MM-DD[T| ]HH:MM[:SS[.fff]][Z]
  auto field = [&](std::size_t pos, std::size_t len, int& out) {
    return pos + len <= text.size() && parse_number(text.substr(pos, len), out);
  };
  int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
  const bool ok = field(0, 4, year) && text.size() >= 16 && text[4] == '-' && field(5, 2, month) &&
                  text[7] == '-' && field(8, 2, day) && (text[10] == 'T' || text[10] == ' ') &&
                  field(11, 2, hour) && text[13] == ':' && field(14, 2, minute);
  if (!ok) throw std::invalid_argument("bad timestamp");
  std::size_t pos = 16;
  std::int64_t millis = 0;
  if (pos < text.size() && text[pos] == ':') {
    if (!field(pos + 1, 2, second)) throw std::invalid_argument("bad timestamp");
    pos += 3;
    if (pos < text.size() && text[pos] == '.') {
      std::size_t end = pos + 1;
      while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
      if (end == pos + 1) throw std::invalid_argument("bad timestamp");
      const std::string digits = std::string(text.substr(pos + 1, std::min<std::size_t>(3, end - pos - 1))) + "00";
      millis = std::stoi(digits.substr(0, 3));
      pos = end;
    }
  }
  if (pos < text.size() && text[pos] == 'Z') ++pos;
  if (pos != text.size()) throw std::invalid_argument("bad timestamp");

  using namespace std::chrono;
  const year_month_day date{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                            std::chrono::day{static_cast<unsigned>(day)}};
  if (!date.ok() || hour > 23 || minute > 59 || second > 60) {
    throw std::invalid_argument("bad timestamp");
  }
  const auto t = sys_days{date} + hours{hour} + minutes{minute} + seconds{second} +
                 milliseconds{millis};
  return duration_cast<milliseconds>(t.time_since_epoch()).count();
}

PriceSeries PriceSeries::parse(std::istream& in, const std::string& source) {
  PriceSeries series;
  read_csv(in, source, "timestamp,ask", [&](const auto& f, std::size_t line) {
    std::int64_t ts = 0;
    try {
      ts = parse_timestamp_ms(f[0]);
    } catch (const std::invalid_argument&) {
      fail(source, line, "bad timestamp '" + std::string(f[0]) + "'");
    }
    double ask = 0.0;
    if (!parse_number(f[1], ask) || !std::isfinite(ask) || !(ask > 0.0)) {
      fail(source, line, "ask must be a positive decimal, got '" + std::string(f[1]) + "'");
    }
    if (!series.timestamps.empty() && ts < series.timestamps.back()) {
      fail(source, line, "timestamps are not monotone");
    }
    series.timestamps.push_back(ts);
    series.asks.push_back(ask);
  });
  return series;
}

PriceSeries PriceSeries::load(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse(in, path.string());
}

ForexEnvironment::ForexEnvironment(PriceSeries series, std::size_t horizon)
    : series_(std::move(series)), horizon_(horizon) {
  if (horizon_ < 1) throw ConfigError("option horizon must be at least 1 tick");
  if (series_.asks.size() < horizon_ + 1) {
    throw DataError("price series has " + std::to_string(series_.asks.size()) +
                    " rows, needs at least " + std::to_string(horizon_ + 1));
  }
}

int ForexEnvironment::reward_at(std::size_t t, std::size_t arm) const {
  if (arm >= 2) throw std::out_of_range("arm index out of range");
  const double now = series_.asks.at(t);
  const double later = series_.asks.at(t + horizon_);
  if (later == now) return 0;
  return (arm == 0) == (later > now) ? 1 : 0;
}

void ForexEnvironment::advance(Rng&) {
  if (started_) {
    ++tick_;
  } else {
    started_ = true;
  }
  if (tick_ >= *length()) throw Error("price series replay exhausted");
}

EnvStep ForexEnvironment::pull(std::size_t arm, Rng&) { return EnvStep{reward_at(tick_, arm), std::nullopt}; }

}  // namespace cts
