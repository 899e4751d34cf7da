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

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sessiz/emotion.hpp"
#include "sessiz/score.hpp"
#include "sessiz/time.hpp"

namespace sessiz {

using EmotionTally = std::array<std::uint64_t, kNumEmotions>;

struct EmotionCounts {
  EmotionTally counts{};
  std::uint64_t ambiguous = 0;

  /// Non-ambiguous predictions only; the denominator for every percentage.
  std::uint64_t classified_total() const;
};

/// Percentages are held as integer tenths, rounded half up, so the published
/// one-decimal figures are reproduced exactly.
std::uint64_t percent_tenths(std::uint64_t count, std::uint64_t total);

struct DistributionRow {
  Emotion emotion = Emotion::kHappy;
  std::uint64_t count = 0;
  std::uint64_t tenths = 0;

  double percentage() const { return static_cast<double>(tenths) / 10.0; }
  friend bool operator==(const DistributionRow&, const DistributionRow&) = default;
};

using Distribution = std::array<DistributionRow, kNumEmotions>;

struct MonthlyRow {
  std::string month;  // YYYY-MM
  std::uint64_t count = 0;
  std::uint64_t tenths = 0;

  double percentage() const { return static_cast<double>(tenths) / 10.0; }
  friend bool operator==(const MonthlyRow&, const MonthlyRow&) = default;
};

enum class Resolution { kDay, kMonth };

Resolution parse_resolution(std::string_view name);

struct SeriesBucket {
  std::string key;  // YYYY-MM-DD or YYYY-MM
  EmotionTally counts{};

  friend bool operator==(const SeriesBucket&, const SeriesBucket&) = default;
};

/// Buckets in strictly increasing key order; only buckets with at least one
/// classified prediction appear.
struct EmotionSeries {
  Resolution resolution = Resolution::kDay;
  std::vector<SeriesBucket> buckets;

  friend bool operator==(const EmotionSeries&, const EmotionSeries&) = default;
};

/// Tallies predictions, optionally restricted to a window. Predictions
/// without a timestamp cannot be windowed; with a window they raise DataError.
EmotionCounts count_emotions(std::span<const ScoredPost> predictions,
                             const std::optional<TimeWindow>& window = std::nullopt);

/// Six rows in label-code order. Throws DataError when nothing was classified.
Distribution distribution(const EmotionCounts& counts);

/// Classified volume per UTC month with its share of the grand total. With a
/// window every month it touches is listed (zero-filled); without one the span
/// runs from the first to the last month present.
std::vector<MonthlyRow> monthly_volume(std::span<const ScoredPost> predictions,
                                       const std::optional<TimeWindow>& window = std::nullopt);

/// distribution() over predictions created in `year` (UTC).
Distribution yearly_distribution(std::span<const ScoredPost> predictions, int year);

EmotionSeries emotion_series(std::span<const ScoredPost> predictions, Resolution resolution);

/// Re-buckets a day series by month.
EmotionSeries rollup_to_months(const EmotionSeries& daily);

/// Distinct UTC years present, ascending.
std::vector<int> years_present(std::span<const ScoredPost> predictions);

}  // namespace sessiz
