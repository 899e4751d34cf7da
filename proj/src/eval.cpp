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

#include "sessiz/eval.hpp"

#include <unordered_map>

#include <fmt/format.h>

#include "sessiz/error.hpp"

namespace sessiz {

namespace {

void require_nonempty(const ConfusionMatrix& m) {
  if (m.total() == 0) throw ValidationError("confusion matrix is empty");
}

double ratio(std::uint64_t num, std::uint64_t den, bool& undefined) {
  undefined = den == 0;
  return undefined ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string fixed4(double v) { return fmt::format("{:.4f}", v); }

}  // namespace

void ConfusionMatrix::add(Emotion truth, Emotion predicted) {
  if (truth == Emotion::kAmbiguous || predicted == Emotion::kAmbiguous) {
    throw ValidationError("confusion matrix labels must be one of the six emotions");
  }
  ++counts_[index(truth)][index(predicted)];
}

std::uint64_t ConfusionMatrix::row_sum(Emotion truth) const {
  std::uint64_t s = 0;
  for (const auto v : counts_[index(truth)]) s += v;
  return s;
}

std::uint64_t ConfusionMatrix::column_sum(Emotion predicted) const {
  std::uint64_t s = 0;
  for (const auto& row : counts_) s += row[index(predicted)];
  return s;
}

std::uint64_t ConfusionMatrix::trace() const {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < counts_.size(); ++i) s += counts_[i][i];
  return s;
}

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t s = 0;
  for (const auto& row : counts_) {
    for (const auto v : row) s += v;
  }
  return s;
}

ConfusionMatrix confusion(std::span<const Emotion> truths, std::span<const Emotion> predicted) {
  if (truths.size() != predicted.size()) {
    throw ValidationError(fmt::format("confusion: {} truths vs {} predictions", truths.size(),
                                      predicted.size()));
  }
  ConfusionMatrix m;
  for (std::size_t i = 0; i < truths.size(); ++i) m.add(truths[i], predicted[i]);
  return m;
}

double accuracy(const ConfusionMatrix& matrix) {
  require_nonempty(matrix);
  return static_cast<double>(matrix.trace()) / static_cast<double>(matrix.total());
}

std::array<ClassMetrics, kNumEmotions> class_metrics(const ConfusionMatrix& matrix) {
  require_nonempty(matrix);
  std::array<ClassMetrics, kNumEmotions> out{};
  for (const Emotion e : kEmotions) {
    auto& m = out[index(e)];
    m.label = e;
    const auto hit = matrix.at(e, e);
    m.support = matrix.row_sum(e);
    m.precision = ratio(hit, matrix.column_sum(e), m.precision_undefined);
    m.recall = ratio(hit, m.support, m.recall_undefined);
    const double denom = m.precision + m.recall;
    m.f1 = denom > 0.0 ? 2.0 * m.precision * m.recall / denom : 0.0;
  }
  return out;
}

EvalReport make_report(const ConfusionMatrix& matrix) {
  return EvalReport{matrix, accuracy(matrix), class_metrics(matrix)};
}

std::string render_report_json(const EvalReport& report) {
  std::string out = "{\n";
  out += fmt::format("  \"accuracy\": {},\n", fixed4(report.accuracy));
  out += fmt::format("  \"correct\": {},\n", report.matrix.trace());
  out += fmt::format("  \"total\": {},\n", report.matrix.total());
  out += "  \"classes\": [\n";
  for (std::size_t i = 0; i < report.classes.size(); ++i) {
    const auto& c = report.classes[i];
    out += fmt::format(
        "    {{\"label\": \"{}\", \"id\": {}, \"precision\": {}, \"recall\": {}, \"f1\": {}, "
        "\"support\": {}, \"precision_undefined\": {}, \"recall_undefined\": {}}}{}\n",
        label_key(c.label), code(c.label), fixed4(c.precision), fixed4(c.recall), fixed4(c.f1),
        c.support, c.precision_undefined, c.recall_undefined,
        i + 1 < report.classes.size() ? "," : "");
  }
  out += "  ],\n  \"confusion\": [\n";
  const auto& counts = report.matrix.counts();
  for (std::size_t r = 0; r < counts.size(); ++r) {
    out += fmt::format("    [{}]{}\n", fmt::join(counts[r], ", "), r + 1 < counts.size() ? "," : "");
  }
  out += "  ]\n}\n";
  return out;
}

std::string render_report_csv(const EvalReport& report) {
  std::string out = "label,precision,recall,f1,support,undefined\n";
  for (const auto& c : report.classes) {
    std::string undefined;
    if (c.precision_undefined) undefined = "precision";
    if (c.recall_undefined) undefined += undefined.empty() ? "recall" : "+recall";
    out += fmt::format("{},{},{},{},{},{}\n", label_key(c.label), fixed4(c.precision),
                       fixed4(c.recall), fixed4(c.f1), c.support, undefined);
  }
  out += fmt::format("accuracy,,,{},{},\n", fixed4(report.accuracy), report.matrix.total());
  return out;
}

ConfusionMatrix confusion_from_predictions(std::span<const LabeledExample> truths,
                                           std::span<const ScoredPost> predictions) {
  std::unordered_map<std::string_view, const ScoredPost*> by_id;
  for (const auto& p : predictions) {
    if (!by_id.emplace(p.id, &p).second) {
      throw DataError(fmt::format("duplicate prediction for id '{}'", p.id));
    }
  }
  ConfusionMatrix m;
  for (const auto& t : truths) {
    const auto it = by_id.find(t.entry_id);
    if (it == by_id.end()) throw DataError(fmt::format("no prediction for id '{}'", t.entry_id));
    const Emotion predicted = it->second->prediction.label;
    if (predicted == Emotion::kAmbiguous) {
      throw DataError(fmt::format(
          "prediction for '{}' is ambiguous; evaluate argmax predictions (predict --argmax)",
          t.entry_id));
    }
    m.add(t.emotion, predicted);
  }
  return m;
}

}  // namespace sessiz
