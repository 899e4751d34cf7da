// Copyright 2026 The Sessiz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sessiz/aggregate.hpp"

#include <map>
#include <set>

#include <fmt/format.h>

#include "sessiz/error.hpp"

namespace sessiz {

namespace {

Timestamp require_time(const ScoredPost& p) {
  if (!p.created_at) {
    throw DataError(fmt::format("prediction '{}' has no created_at; cannot bucket by time", p.id));
  }
  return *p.created_at;
}

bool classified(const ScoredPost& p) { return p.prediction.label != Emotion::kAmbiguous; }

std::string next_month(const std::string& key) {
  int y = std::stoi(key.substr(0, 4));
  int m = std::stoi(key.substr(5, 2)) + 1;
  if (m == 13) {
    m = 1;
    ++y;
  }
  return fmt::format("{:04d}-{:02d}", y, m);
}

}  // namespace

std::uint64_t EmotionCounts::classified_total() const {
  std::uint64_t total = 0;
  for (const auto c : counts) total += c;
  return total;
}

std::uint64_t percent_tenths(std::uint64_t count, std::uint64_t total) {
  if (total == 0) return 0;
  // floor(1000 * count / total + 1/2) without floating point.
  return (2000 * count + total) / (2 * total);
}

Resolution parse_resolution(std::string_view name) {
  if (name == "day") return Resolution::kDay;
  if (name == "month") return Resolution::kMonth;
  throw ValidationError(fmt::format("unknown resolution '{}' (expected day or month)", name));
}

EmotionCounts count_emotions(std::span<const ScoredPost> predictions,
                             const std::optional<TimeWindow>& window) {
  EmotionCounts out;
  for (const auto& p : predictions) {
    if (window && !window->contains(require_time(p))) continue;
    if (classified(p)) {
      ++out.counts[index(p.prediction.label)];
    } else {
      ++out.ambiguous;
    }
  }
  return out;
}

Distribution distribution(const EmotionCounts& counts) {
  const auto total = counts.classified_total();
  if (total == 0) throw DataError("no classified predictions; distribution is undefined");
  Distribution rows{};
  for (const Emotion e : kEmotions) {
    const auto c = counts.counts[index(e)];
    rows[index(e)] = DistributionRow{e, c, percent_tenths(c, total)};
  }
  return rows;
}

std::vector<MonthlyRow> monthly_volume(std::span<const ScoredPost> predictions,
                                       const std::optional<TimeWindow>& window) {
  std::map<std::string, std::uint64_t> per_month;
  for (const auto& p : predictions) {
    const Timestamp t = require_time(p);
    if (window && !window->contains(t)) continue;
    if (classified(p)) ++per_month[month_key(t)];
  }

  std::string first;
  std::string last;
  if (window) {
    first = month_key(window->start);
    last = month_key(window->end);
  } else if (!per_month.empty()) {
    first = per_month.begin()->first;
    last = per_month.rbegin()->first;
  } else {
    return {};
  }

  std::uint64_t grand = 0;
  for (const auto& [month, n] : per_month) grand += n;

  std::vector<MonthlyRow> rows;
  for (std::string m = first; m <= last; m = next_month(m)) {
    const auto it = per_month.find(m);
    const std::uint64_t n = it == per_month.end() ? 0 : it->second;
    rows.push_back(MonthlyRow{m, n, percent_tenths(n, grand)});
  }
  return rows;
}

Distribution yearly_distribution(std::span<const ScoredPost> predictions, int year) {
  EmotionCounts counts;
  for (const auto& p : predictions) {
    if (year_of(require_time(p)) != year) continue;
    if (classified(p)) {
      ++counts.counts[index(p.prediction.label)];
    } else {
      ++counts.ambiguous;
    }
  }
  if (counts.classified_total() == 0) {
    throw DataError(fmt::format("no classified predictions in {}", year));
  }
  return distribution(counts);
}

EmotionSeries emotion_series(std::span<const ScoredPost> predictions, Resolution resolution) {
  std::map<std::string, EmotionTally> buckets;
  for (const auto& p : predictions) {
    const Timestamp t = require_time(p);
    if (!classified(p)) continue;
    const auto key = resolution == Resolution::kDay ? day_key(t) : month_key(t);
    ++buckets[key][index(p.prediction.label)];
  }
  EmotionSeries series{resolution, {}};
  for (auto& [key, tally] : buckets) series.buckets.push_back({key, tally});
  return series;
}

EmotionSeries rollup_to_months(const EmotionSeries& daily) {
  if (daily.resolution != Resolution::kDay) {
    throw ValidationError("rollup_to_months expects a day-resolution series");
  }
  std::map<std::string, EmotionTally> months;
  for (const auto& b : daily.buckets) {
    auto& tally = months[b.key.substr(0, 7)];
    for (std::size_t i = 0; i < tally.size(); ++i) tally[i] += b.counts[i];
  }
  EmotionSeries series{Resolution::kMonth, {}};
  for (auto& [key, tally] : months) series.buckets.push_back({key, tally});
  return series;
}

std::vector<int> years_present(std::span<const ScoredPost> predictions) {
  std::set<int> years;
  for (const auto& p : predictions) {
    if (p.created_at) years.insert(year_of(*p.created_at));
  }
  return {years.begin(), years.end()};
}

}  // namespace sessiz
