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
#include <span>
#include <string>

#include "sessiz/corpus.hpp"
#include "sessiz/emotion.hpp"
#include "sessiz/score.hpp"

namespace sessiz {

/// 6x6 tally; rows are true labels, columns predicted labels. Every metric in
/// this module is keyed to that orientation.
class ConfusionMatrix {
 public:
  using Counts = std::array<std::array<std::uint64_t, kNumEmotions>, kNumEmotions>;

  ConfusionMatrix() = default;
  explicit ConfusionMatrix(const Counts& counts) : counts_(counts) {}

  /// Throws ValidationError if either label is Ambiguous.
  void add(Emotion truth, Emotion predicted);

  std::uint64_t at(Emotion truth, Emotion predicted) const {
    return counts_[index(truth)][index(predicted)];
  }
  const Counts& counts() const { return counts_; }

  std::uint64_t row_sum(Emotion truth) const;
  std::uint64_t column_sum(Emotion predicted) const;
  std::uint64_t trace() const;
  std::uint64_t total() const;

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

 private:
  Counts counts_{};
};

/// Throws ValidationError on a length mismatch or an Ambiguous label.
ConfusionMatrix confusion(std::span<const Emotion> truths, std::span<const Emotion> predicted);

/// trace / total. Throws ValidationError on an empty matrix.
double accuracy(const ConfusionMatrix& matrix);

struct ClassMetrics {
  Emotion label = Emotion::kHappy;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;  // row sum
  // Set when the denominator was zero and the metric was reported as 0.
  bool precision_undefined = false;
  bool recall_undefined = false;
};

/// Per-class precision/recall/F1 in label-code order. Throws ValidationError on
/// an empty matrix.
std::array<ClassMetrics, kNumEmotions> class_metrics(const ConfusionMatrix& matrix);

struct EvalReport {
  ConfusionMatrix matrix;
  double accuracy = 0.0;
  std::array<ClassMetrics, kNumEmotions> classes{};
};

EvalReport make_report(const ConfusionMatrix& matrix);

/// Deterministic renderings with four-decimal metrics.
std::string render_report_json(const EvalReport& report);
std::string render_report_csv(const EvalReport& report);

/// Joins truth sentences and predictions by id. Every truth needs exactly one
/// non-ambiguous prediction; DataError otherwise.
ConfusionMatrix confusion_from_predictions(std::span<const LabeledExample> truths,
                                           std::span<const ScoredPost> predictions);

}  // namespace sessiz
