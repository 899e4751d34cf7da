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

#include "sessiz/score.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "sessiz/error.hpp"
#include "test_support.hpp"

namespace sessiz {
namespace {

EmotionLogits logits(std::array<double, kNumEmotions> v) { return EmotionLogits{v}; }

double sum(const EmotionProbabilities& p) {
  double s = 0;
  for (const double v : p.values) s += v;
  return s;
}

// Reference values computed at 30 significant digits.
TEST(Softmax, FrozenOracleValues) {
  const auto p = softmax(logits({2, 1, 0, 0, 0, 0}));
  EXPECT_NEAR(p.values[0], 0.523773949200198945216908626575, 1e-15);
  EXPECT_NEAR(p.values[1], 0.192685667731928606897324007062, 1e-15);
  for (int i = 2; i < 6; ++i) EXPECT_NEAR(p.values[i], 0.0708850957669681119714418415906, 1e-15);

  const auto q = softmax(logits({0.5, -2.25, 3.75, 1, 0, -0.125}));
  const double expected[] = {0.0337327503066199098209861702146, 0.00215646257972211991132709251838,
                             0.869979096749525964847733632319, 0.0556159029497405150876238453212,
                             0.0204599472973957113048219786950, 0.0180558401169957790275072809315};
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(q.values[i], expected[i], 1e-15);
}

TEST(Softmax, LargeMagnitudesStayFinite) {
  const auto p = softmax(logits({-1000, -1001, -1002, -1003, -1004, -1005}));
  EXPECT_NEAR(p.values[0], 0.633691322573721874972891716942, 1e-15);
  EXPECT_NEAR(p.values[5], 0.00426977854528211002123808257157, 1e-15);
  const auto big = softmax(logits({1e308, 0, 0, 0, 0, 0}));
  EXPECT_DOUBLE_EQ(big.values[0], 1.0);
}

TEST(Softmax, EqualLogitsGiveUniform) {
  for (const double v : {0.0, -7.5, 123.0}) {
    const auto p = softmax(logits({v, v, v, v, v, v}));
    for (const double x : p.values) EXPECT_NEAR(x, 1.0 / 6.0, 1e-15);
  }
}

TEST(Softmax, NonFiniteRejected) {
  EXPECT_THROW(softmax(logits({std::nan(""), 0, 0, 0, 0, 0})), ValidationError);
  EXPECT_THROW(softmax(logits({std::numeric_limits<double>::infinity(), 0, 0, 0, 0, 0})),
               ValidationError);
}

TEST(Softmax, RandomizedInvariants) {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> logit(-30.0, 30.0);
  std::uniform_real_distribution<double> shift(-50.0, 50.0);
  for (int trial = 0; trial < 10000; ++trial) {
    EmotionLogits l;
    for (auto& v : l.values) v = logit(rng);
    const auto p = softmax(l);
    ASSERT_NEAR(sum(p), 1.0, 1e-9);
    for (const double v : p.values) ASSERT_GT(v, 0.0);

    EmotionLogits shifted = l;
    const double s = shift(rng);
    for (auto& v : shifted.values) v += s;
    const auto ps = softmax(shifted);
    for (int i = 0; i < kNumEmotions; ++i) ASSERT_NEAR(p.values[i], ps.values[i], 1e-12);

    const std::size_t k = trial % kNumEmotions;
    EmotionLogits raised = l;
    raised.values[k] += 0.5;
    ASSERT_GE(softmax(raised).values[k], p.values[k]);
  }
}

TEST(Threshold, RandomProbabilityVectorsAgreeWithDirectRule) {
  std::mt19937_64 rng(60);
  std::gamma_distribution<double> gamma(0.4, 1.0);
  std::size_t violations = 0;
  std::size_t ambiguous = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    EmotionProbabilities p;
    double total = 0;
    for (auto& v : p.values) total += (v = gamma(rng));
    for (auto& v : p.values) v /= total;
    const auto top = std::max_element(p.values.begin(), p.values.end());
    const auto expected = *top >= 0.6
                              ? static_cast<Emotion>(std::distance(p.values.begin(), top))
                              : Emotion::kAmbiguous;
    const auto got = decide(p, 0.6);
    if (got.label != expected || got.confidence != *top) ++violations;
    if (got.label == Emotion::kAmbiguous) ++ambiguous;
  }
  EXPECT_EQ(violations, 0u);
  EXPECT_GT(ambiguous, 1000u);
  EXPECT_LT(ambiguous, 9000u);
}

TEST(Threshold, BoundaryIsInclusive) {
  EmotionProbabilities p{{0.6, 0.4, 0, 0, 0, 0}};
  EXPECT_EQ(decide(p, 0.6).label, Emotion::kHappy);
  p = {{0.2, 0, 0, 0, 0.2, 0.5999999999}};
  EXPECT_EQ(decide(p, 0.6).label, Emotion::kAmbiguous);
}

TEST(Threshold, ExampleDecisions) {
  EXPECT_EQ(decide(softmax(logits({0, 0, 0, 0, 0, 5}))).label, Emotion::kAnger);
  EXPECT_EQ(decide(softmax(logits({2, 1, 0, 0, 0, 0}))).label, Emotion::kAmbiguous);
  EXPECT_EQ(decide(softmax(logits({0, 0, 0, 0, 0, 0}))).label, Emotion::kAmbiguous);
}

TEST(Threshold, RangeValidated) {
  EXPECT_THROW(validate_threshold(0.0), ValidationError);
  EXPECT_THROW(validate_threshold(1.5), ValidationError);
  EXPECT_THROW(validate_threshold(std::nan("")), ValidationError);
  EXPECT_NO_THROW(validate_threshold(1.0));
}

TEST(Threshold, ArgmaxTieGoesToLowestCode) {
  EXPECT_EQ(argmax(EmotionProbabilities{{0.1, 0.4, 0.1, 0.4, 0, 0}}), Emotion::kFear);
}

LexiconMockBackend mock() {
  return LexiconMockBackend({{Emotion::kHappy, {"mutlu"}},
                             {Emotion::kFear, {"kork"}},
                             {Emotion::kSadness, {"üzgün"}},
                             {Emotion::kDisgust, {"iğrenç"}},
                             {Emotion::kSurprise, {"şaşır"}},
                             {Emotion::kAnger, {"öfke"}}});
}

TEST(MockBackend, CountsKeywordHits) {
  const auto m = mock();
  const auto l = m.score("mutlu mutlu mutlu");
  EXPECT_EQ(l.values[0], 3.0);
  EXPECT_EQ(predict("mutlu MUTLU mutluyum", m).label, Emotion::kHappy);
  EXPECT_EQ(argmax(softmax(m.score("öfke öfkeli korktum"))), Emotion::kAnger);
}

TEST(MockBackend, NoHitsOrTiesAreUniform) {
  const auto m = mock();
  for (const char* text : {"hiçbir şey", "mutlu korku", ""}) {
    const auto l = m.score(text);
    for (const double v : l.values) EXPECT_EQ(v, 0.0) << text;
    EXPECT_EQ(predict(text, m).label, Emotion::kAmbiguous);
  }
}

TEST(MockBackend, IncompleteTableRejected) {
  EXPECT_THROW(LexiconMockBackend({{Emotion::kHappy, {"a"}}}), ValidationError);
}

TEST(MockBackend, BundledKeywordTableLoads) {
  const auto backend = load_backend(BackendKind::kMock, testing::data_dir() / "mock_model");
  EXPECT_EQ(backend->info().name, "lexicon-mock");
  EXPECT_EQ(predict("korkuyorum korkuyorum endişeliyim", *backend).label, Emotion::kFear);
}

TEST(BatchPredict, MatchesSingleCallsAndKeepsDuplicates) {
  const auto m = mock();
  std::vector<ScoringInput> inputs;
  std::mt19937_64 rng(3);
  const std::vector<std::string> words{"mutlu", "kork", "üzgün", "iğrenç", "şaşır", "öfke", "ve"};
  for (int i = 0; i < 100; ++i) {
    std::string text;
    for (int w = 0; w < 6; ++w) text += words[rng() % words.size()] + " ";
    inputs.push_back({std::to_string(i), std::nullopt, text});
  }
  for (int i = 0; i < 5; ++i) inputs.push_back({"dup" + std::to_string(i), std::nullopt, "mutlu mutlu mutlu"});
  const auto result = batch_predict(inputs, m);
  ASSERT_EQ(result.predictions.size(), inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    EXPECT_EQ(result.predictions[i].id, inputs[i].id);
    EXPECT_EQ(result.predictions[i].prediction, predict(inputs[i].text, m));
  }
  for (std::size_t i = 100; i < inputs.size(); ++i) {
    EXPECT_EQ(result.predictions[i].prediction, result.predictions[100].prediction);
  }
  EXPECT_TRUE(batch_predict({}, m).predictions.empty());
}

class FlakyBackend final : public ScorerBackend {
 public:
  BackendInfo info() const override { return {"flaky", "0"}; }
  EmotionLogits score(std::string_view text) const override {
    if (text == "boom") throw BackendError("exploded");
    return EmotionLogits{{5, 0, 0, 0, 0, 0}};
  }
};

TEST(BatchPredict, BackendErrorsFailUnlessSkipped) {
  const std::vector<ScoringInput> inputs{{"a", std::nullopt, "ok"},
                                         {"b", std::nullopt, "boom"},
                                         {"c", std::nullopt, "ok"}};
  EXPECT_THROW(batch_predict(inputs, FlakyBackend{}), BackendError);
  const auto r = batch_predict(inputs, FlakyBackend{}, 0.6, true);
  ASSERT_EQ(r.predictions.size(), 2u);
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].id, "b");
}

TEST(Predictions, CsvRoundTripWithAmbiguous) {
  const std::vector<ScoredPost> posts{
      {"1", parse_iso8601("2022-05-01T10:00:00Z"), {Emotion::kAnger, 0.75}},
      {"2", std::nullopt, {Emotion::kAmbiguous, 0.3}}};
  std::stringstream buf;
  write_predictions(buf, posts);
  EXPECT_EQ(buf.str(),
            "id,created_at,label_id,label_name,confidence\n"
            "1,2022-05-01T10:00:00Z,5,anger,0.750000\n"
            "2,,-1,ambiguous,0.300000\n");
  EXPECT_EQ(read_predictions(buf), posts);
}

TEST(Predictions, InconsistentRowsRejected) {
  std::istringstream bad("id,created_at,label_id,label_name,confidence\n1,,2,anger,0.9\n");
  EXPECT_THROW(read_predictions(bad), DataError);
}

}  // namespace
}  // namespace sessiz
