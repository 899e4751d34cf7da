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
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sessiz/emotion.hpp"

namespace sessiz {

/// One labeled training sentence. `emotion` is the assigned label and
/// `validated_emotion` the confirmed one, when the sentence was validated.
struct LabeledExample {
  std::string entry_id;
  std::string text;
  Emotion emotion = Emotion::kHappy;
  std::optional<Emotion> validated_emotion;

  friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

struct SplitCorpus {
  std::vector<LabeledExample> train;
  std::vector<LabeledExample> test;
};

/// Source column names for the four corpus fields.
struct ColumnMap {
  std::string id = "ID";
  std::string entry = "Entry";
  std::string emotion = "Emotion";
  std::string validated = "ValidatedEmotion";

  /// Overrides from `ID=tweet_id,Entry=sentence`; unknown keys -> ValidationError.
  static ColumnMap parse(std::string_view spec);
};

using ClassCounts = std::array<std::size_t, kNumEmotions>;

/// Reads a corpus CSV. Emotion cells take a name or a code 0..5; an empty or
/// "Ambiguous" validated cell means not validated. Malformed rows -> DataError
/// with the line number.
std::vector<LabeledExample> load_corpus(std::istream& in, const ColumnMap& columns = {});
std::vector<LabeledExample> load_corpus(const std::filesystem::path& path,
                                        const ColumnMap& columns = {});

/// Writes `ID,Entry,Emotion,ValidatedEmotion` with canonical label names.
void write_corpus(std::ostream& out, std::span<const LabeledExample> examples);

/// Keeps validated examples only; each kept example's label becomes its
/// validated label.
std::vector<LabeledExample> filter_validated(std::span<const LabeledExample> examples);

/// Turkish-lowercases and whitespace-collapses every text, dropping examples
/// left empty. `dropped` (optional) receives how many were removed.
std::vector<LabeledExample> lowercase_texts(std::span<const LabeledExample> examples,
                                            std::size_t* dropped = nullptr);

ClassCounts class_counts(std::span<const LabeledExample> examples);

/// Downsamples every class to the smallest class count. Output is grouped by
/// label code; within a class the kept examples stay in input order, so a
/// class already at the minimum is passed through untouched. Throws DataError
/// naming any class with no examples.
std::vector<LabeledExample> balance(std::span<const LabeledExample> examples, std::uint64_t seed);

/// round-half-up(count * fraction), capped at count - 1 so the class keeps a
/// training member.
std::size_t stratified_test_size(std::size_t count, double test_fraction);

/// Stratified split: each class is shuffled with the seed and its first
/// stratified_test_size() members go to test. Both sides keep input order.
/// Throws ValidationError for a fraction outside (0, 1), DataError when a class
/// has fewer than two members or entry ids repeat.
SplitCorpus split(std::span<const LabeledExample> examples, double test_fraction,
                  std::uint64_t seed);

}  // namespace sessiz
