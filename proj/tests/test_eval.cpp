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

#include <random>

#include <gtest/gtest.h>

#include "sessiz/error.hpp"

namespace sessiz {
namespace {

// Diagonal of the published test-split confusion matrix; off-diagonal mass is
// spread so that the grand total is 3,605.
ConfusionMatrix published_shape() {
  ConfusionMatrix::Counts c{};
  const std::uint64_t diag[] = {574, 558, 556, 581, 534, 535};
  for (int i = 0; i < 6; ++i) c[i][i] = diag[i];
  const std::uint64_t off = 3605 - 3338;  // 267
  for (std::uint64_t k = 0; k < off; ++k) c[k % 6][(k % 6 + 1 + k % 5) % 6] += 1;
  return ConfusionMatrix(c);
}

TEST(Eval, PublishedDiagonalAccuracy) {
  const auto m = published_shape();
  EXPECT_EQ(m.trace(), 3338u);
  EXPECT_EQ(m.total(), 3605u);
  EXPECT_DOUBLE_EQ(accuracy(m), 3338.0 / 3605.0);
  EXPECT_NE(render_report_json(make_report(m)).find("\"accuracy\": 0.9259"), std::string::npos);
}

TEST(Eval, PerfectPredictionsScoreOne) {
  std::vector<Emotion> labels;
  for (int r = 0; r < 10; ++r) labels.insert(labels.end(), kEmotions.begin(), kEmotions.end());
  const auto m = confusion(labels, labels);
  EXPECT_EQ(accuracy(m), 1.0);
  for (const auto& c : class_metrics(m)) {
    EXPECT_EQ(c.precision, 1.0);
    EXPECT_EQ(c.recall, 1.0);
    EXPECT_EQ(c.f1, 1.0);
  }
}

TEST(Eval, AllWrongScoresZero) {
  std::vector<Emotion> truth(12, Emotion::kHappy);
  std::vector<Emotion> pred(12, Emotion::kFear);
  EXPECT_EQ(accuracy(confusion(truth, pred)), 0.0);
}

TEST(Eval, UndefinedPrecisionIsFlagged) {
  const std::vector<Emotion> truth{Emotion::kHappy, Emotion::kFear};
  const std::vector<Emotion> pred{Emotion::kHappy, Emotion::kHappy};
  const auto metrics = class_metrics(confusion(truth, pred));
  EXPECT_TRUE(metrics[index(Emotion::kFear)].precision_undefined);
  EXPECT_FALSE(metrics[index(Emotion::kFear)].recall_undefined);
  EXPECT_TRUE(metrics[index(Emotion::kAnger)].recall_undefined);
  EXPECT_EQ(metrics[index(Emotion::kHappy)].precision, 0.5);
}

TEST(Eval, EmptyAndMismatchedInputsRejected) {
  EXPECT_THROW(accuracy(ConfusionMatrix{}), ValidationError);
  const std::vector<Emotion> one{Emotion::kHappy};
  EXPECT_THROW(confusion(one, {}), ValidationError);
  ConfusionMatrix m;
  EXPECT_THROW(m.add(Emotion::kAmbiguous, Emotion::kHappy), ValidationError);
}

TEST(Eval, AccuracyEqualsTraceOverTotalOnRandomMatrices) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Emotion> t;
    std::vector<Emotion> p;
    const int n = 1 + static_cast<int>(rng() % 300);
    std::uint64_t hits = 0;
    for (int i = 0; i < n; ++i) {
      t.push_back(kEmotions[rng() % 6]);
      p.push_back(kEmotions[rng() % 6]);
      hits += t.back() == p.back();
    }
    const auto m = confusion(t, p);
    ASSERT_EQ(m.total(), static_cast<std::uint64_t>(n));
    ASSERT_EQ(m.trace(), hits);
    ASSERT_DOUBLE_EQ(accuracy(m), static_cast<double>(hits) / n);
    std::uint64_t support = 0;
    for (const auto& c : class_metrics(m)) support += c.support;
    ASSERT_EQ(support, static_cast<std::uint64_t>(n));
  }
}

TEST(Eval, JoinsPredictionsById) {
  const std::vector<LabeledExample> truth{{"a", "x", Emotion::kHappy, Emotion::kHappy},
                                          {"b", "y", Emotion::kAnger, Emotion::kAnger}};
  std::vector<ScoredPost> preds{{"b", std::nullopt, {Emotion::kAnger, 0.9}},
                                {"a", std::nullopt, {Emotion::kFear, 0.9}}};
  const auto m = confusion_from_predictions(truth, preds);
  EXPECT_EQ(m.at(Emotion::kHappy, Emotion::kFear), 1u);
  EXPECT_EQ(m.at(Emotion::kAnger, Emotion::kAnger), 1u);

  preds[0].prediction.label = Emotion::kAmbiguous;
  EXPECT_THROW(confusion_from_predictions(truth, preds), DataError);
  preds.pop_back();
  EXPECT_THROW(confusion_from_predictions(truth, preds), DataError);
}

TEST(Eval, CsvReportLayout) {
  const std::vector<Emotion> labels(kEmotions.begin(), kEmotions.end());
  const auto csv = render_report_csv(make_report(confusion(labels, labels)));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "label,precision,recall,f1,support,undefined");
  EXPECT_NE(csv.find("happy,1.0000,1.0000,1.0000,1,\n"), std::string::npos);
  EXPECT_NE(csv.find("accuracy,,,1.0000,6,\n"), std::string::npos);
}

}  // namespace
}  // namespace sessiz
