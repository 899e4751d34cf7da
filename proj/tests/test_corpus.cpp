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

#include "sessiz/corpus.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "sessiz/error.hpp"

namespace sessiz {
namespace {

std::vector<LabeledExample> synthetic(const std::array<std::size_t, kNumEmotions>& counts) {
  std::vector<LabeledExample> out;
  std::size_t id = 0;
  // Interleave classes so grouping and ordering are actually exercised.
  std::array<std::size_t, kNumEmotions> left = counts;
  while (std::any_of(left.begin(), left.end(), [](std::size_t n) { return n > 0; })) {
    for (const Emotion e : kEmotions) {
      if (left[index(e)] == 0) continue;
      --left[index(e)];
      ++id;
      out.push_back({"e" + std::to_string(id), "cümle " + std::to_string(id), e, e});
    }
  }
  return out;
}

std::string serialize(std::span<const LabeledExample> examples) {
  std::ostringstream out;
  write_corpus(out, examples);
  return out.str();
}

TEST(Corpus, FilterValidatedTakesValidatedLabel) {
  std::vector<LabeledExample> in;
  for (int i = 0; i < 10; ++i) {
    std::optional<Emotion> v;
    if (i < 7) v = i % 2 ? Emotion::kAnger : Emotion::kFear;
    in.push_back({std::to_string(i), "t", Emotion::kHappy, v});
  }
  const auto out = filter_validated(in);
  ASSERT_EQ(out.size(), 7u);
  for (std::size_t i = 0; i < out.size(); ++i) {
    EXPECT_EQ(out[i].emotion, i % 2 ? Emotion::kAnger : Emotion::kFear);
  }
  EXPECT_TRUE(filter_validated(std::vector<LabeledExample>{{"1", "t", Emotion::kHappy, {}}}).empty());
}

TEST(Corpus, LoadsDefaultAndRemappedHeaders) {
  std::istringstream plain("ID,Entry,Emotion,ValidatedEmotion\n1,Mutluyum,Happy,Happy\n2,x,Fear,\n");
  const auto a = load_corpus(plain);
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[0].validated_emotion, Emotion::kHappy);
  EXPECT_FALSE(a[1].validated_emotion.has_value());

  std::istringstream remapped("sentence,key,label,checked\nKorkuyorum,9,Fear,Fear\n");
  const auto b = load_corpus(remapped, ColumnMap::parse("ID=key,Entry=sentence,Emotion=label,"
                                                        "ValidatedEmotion=checked"));
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].entry_id, "9");
  EXPECT_EQ(b[0].text, "Korkuyorum");
}

TEST(Corpus, AmbiguousValidationMeansUnvalidated) {
  std::istringstream in("ID,Entry,Emotion,ValidatedEmotion\n1,a,Happy,Ambiguous\n2,b,Fear,-1\n");
  for (const auto& e : load_corpus(in)) EXPECT_FALSE(e.validated_emotion.has_value());
}

TEST(Corpus, UnknownLabelIsDataErrorWithLine) {
  std::istringstream in("ID,Entry,Emotion,ValidatedEmotion\n1,a,Happy,Happy\n2,b,Joy,Joy\n");
  try {
    load_corpus(in);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(Corpus, BadColumnMapRejected) {
  EXPECT_THROW(ColumnMap::parse("Colour=x"), ValidationError);
  EXPECT_THROW(ColumnMap::parse("ID"), ValidationError);
}

TEST(Corpus, LowercasingIsTurkishAware) {
  const std::vector<LabeledExample> in{{"1", "  SESSİZ  Istila ", Emotion::kFear, Emotion::kFear},
                                       {"2", "   ", Emotion::kFear, Emotion::kFear}};
  std::size_t dropped = 0;
  const auto out = lowercase_texts(in, &dropped);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].text, "sessiz ıstila");
  EXPECT_EQ(dropped, 1u);
}

TEST(Corpus, BalanceDownsamplesToMinimum) {
  const auto in = synthetic({3203, 3525, 3316, 3100, 3003, 3400});
  const auto out = balance(in, 42);
  EXPECT_EQ(out.size(), 18018u);
  for (const auto n : class_counts(out)) EXPECT_EQ(n, 3003u);
  // Every surprise example is kept; the others are subsets of the input.
  std::set<std::string> ids;
  for (const auto& e : in) ids.insert(e.entry_id);
  for (const auto& e : out) EXPECT_TRUE(ids.count(e.entry_id));
  std::set<std::string> unique;
  for (const auto& e : out) unique.insert(e.entry_id);
  EXPECT_EQ(unique.size(), out.size());
}

TEST(Corpus, BalanceSmallCountsOracle) {
  const auto out = balance(synthetic({10, 5, 8, 7, 6, 9}), 1);
  EXPECT_EQ(out.size(), 30u);
  for (const auto n : class_counts(out)) EXPECT_EQ(n, 5u);
}

TEST(Corpus, BalanceOfEqualClassesIsIdentityMultiset) {
  const auto in = synthetic({5, 5, 5, 5, 5, 5});
  auto out = balance(in, 3);
  auto sorted_in = in;
  const auto by_id = [](const LabeledExample& a, const LabeledExample& b) {
    return a.entry_id < b.entry_id;
  };
  std::sort(out.begin(), out.end(), by_id);
  std::sort(sorted_in.begin(), sorted_in.end(), by_id);
  EXPECT_EQ(out, sorted_in);
}

TEST(Corpus, BalanceIsIdempotentAndDeterministic) {
  const auto in = synthetic({40, 35, 50, 33, 31, 47});
  for (std::uint64_t seed : {0ull, 1ull, 42ull, 987654321ull}) {
    const auto once = balance(in, seed);
    EXPECT_EQ(balance(once, seed), once);
    EXPECT_EQ(serialize(balance(in, seed)), serialize(once));
  }
  EXPECT_NE(serialize(balance(in, 1)), serialize(balance(in, 2)));
}

TEST(Corpus, BalanceGroupsByLabelCode) {
  const auto out = balance(synthetic({4, 6, 5, 7, 8, 9}), 11);
  EXPECT_TRUE(std::is_sorted(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return code(a.emotion) < code(b.emotion);
  }));
}

TEST(Corpus, BalanceNamesMissingClass) {
  try {
    balance(synthetic({3, 3, 3, 3, 0, 3}), 1);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("Surprise"), std::string::npos);
  }
}

TEST(Corpus, StratifiedTestSizeRoundsHalfUp) {
  EXPECT_EQ(stratified_test_size(3003, 0.1), 300u);
  EXPECT_EQ(stratified_test_size(10, 0.1), 1u);
  EXPECT_EQ(stratified_test_size(15, 0.1), 2u);  // 1.5 rounds up
  EXPECT_EQ(stratified_test_size(25, 0.1), 3u);  // 2.5 rounds up despite binary 0.1
  EXPECT_EQ(stratified_test_size(4, 0.1), 0u);
  EXPECT_EQ(stratified_test_size(2, 0.9), 1u);   // capped so one member trains
}

TEST(Corpus, SplitOfBalancedCorpus) {
  const auto balanced = balance(synthetic({3203, 3525, 3316, 3100, 3003, 3400}), 42);
  const auto parts = split(balanced, 0.1, 42);
  EXPECT_EQ(parts.test.size(), 1800u);
  EXPECT_EQ(parts.train.size(), 16218u);
  for (const auto n : class_counts(parts.test)) EXPECT_EQ(n, 300u);
  for (const auto n : class_counts(parts.train)) EXPECT_EQ(n, 2703u);
}

TEST(Corpus, SplitIsAPartition) {
  const auto in = synthetic({17, 23, 11, 9, 30, 12});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto parts = split(in, 0.25, seed);
    std::multiset<std::string> seen;
    for (const auto& e : parts.train) seen.insert(e.entry_id);
    std::set<std::string> train_ids(seen.begin(), seen.end());
    for (const auto& e : parts.test) {
      EXPECT_FALSE(train_ids.count(e.entry_id));
      seen.insert(e.entry_id);
    }
    std::multiset<std::string> all;
    for (const auto& e : in) all.insert(e.entry_id);
    EXPECT_EQ(seen, all);
  }
}

TEST(Corpus, SplitSmallOracleAndDeterminism) {
  const auto in = synthetic({10, 10, 10, 10, 10, 10});
  const auto a = split(in, 0.1, 5);
  EXPECT_EQ(a.test.size(), 6u);
  EXPECT_EQ(a.train.size(), 54u);
  const auto b = split(in, 0.1, 5);
  EXPECT_EQ(serialize(a.train) + serialize(a.test), serialize(b.train) + serialize(b.test));
}

TEST(Corpus, SplitRejectsBadInput) {
  EXPECT_THROW(split(synthetic({10, 0, 0, 0, 0, 0}), 0.1, 1), DataError);
  EXPECT_THROW(split(synthetic({2, 2, 2, 2, 2, 1}), 0.1, 1), DataError);
  EXPECT_THROW(split(synthetic({2, 2, 2, 2, 2, 2}), 0.0, 1), ValidationError);
  EXPECT_THROW(split(synthetic({2, 2, 2, 2, 2, 2}), 1.0, 1), ValidationError);
  auto dup = synthetic({2, 2, 2, 2, 2, 2});
  dup[1].entry_id = dup[0].entry_id;
  EXPECT_THROW(split(dup, 0.5, 1), DataError);
}

TEST(Corpus, WriteLoadRoundTrip) {
  const auto in = synthetic({2, 1, 1, 1, 1, 1});
  std::istringstream text(serialize(in));
  EXPECT_EQ(load_corpus(text), in);
}

}  // namespace
}  // namespace sessiz
