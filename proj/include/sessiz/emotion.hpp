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
#include <optional>
#include <string>
#include <string_view>

namespace sessiz {

/// The six basic emotions with their fixed integer codes. Ambiguous is only
/// ever produced by thresholded prediction; it never appears in training data.
enum class Emotion : int {
  kAmbiguous = -1,
  kHappy = 0,
  kFear = 1,
  kSadness = 2,
  kDisgust = 3,
  kSurprise = 4,
  kAnger = 5,
};

inline constexpr int kNumEmotions = 6;

inline constexpr std::array<Emotion, kNumEmotions> kEmotions = {
    Emotion::kHappy,   Emotion::kFear,     Emotion::kSadness,
    Emotion::kDisgust, Emotion::kSurprise, Emotion::kAnger};

constexpr int code(Emotion e) { return static_cast<int>(e); }
constexpr std::size_t index(Emotion e) { return static_cast<std::size_t>(code(e)); }

/// Canonical names: "Happy" ... "Anger", and "Ambiguous".
std::string_view label_name(Emotion e);

/// Lowercase names used in output files: "happy" ... "anger", "ambiguous".
std::string_view label_key(Emotion e);

/// Name -> code for the six emotions (case-insensitive). Throws ValidationError
/// on anything else, including "Ambiguous".
int label_to_id(std::string_view name);

/// Code -> canonical name; -1 decodes to "Ambiguous". Throws ValidationError otherwise.
std::string id_to_label(int id);

/// Code in 0..5 -> Emotion; -1 -> kAmbiguous; otherwise nullopt.
std::optional<Emotion> emotion_from_code(int id);

/// Accepts a canonical name (any case) or a decimal code 0..5.
std::optional<Emotion> parse_emotion(std::string_view text);

}  // namespace sessiz
