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

#include "sessiz/emotion.hpp"

#include <algorithm>
#include <charconv>

#include <fmt/format.h>

#include "sessiz/error.hpp"

namespace sessiz {

namespace {

constexpr std::array<std::string_view, kNumEmotions> kNames = {"Happy",   "Fear",     "Sadness",
                                                               "Disgust", "Surprise", "Anger"};
constexpr std::array<std::string_view, kNumEmotions> kKeys = {"happy",   "fear",     "sadness",
                                                              "disgust", "surprise", "anger"};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           const auto lx = static_cast<char>(x >= 'A' && x <= 'Z' ? x + 32 : x);
           const auto ly = static_cast<char>(y >= 'A' && y <= 'Z' ? y + 32 : y);
           return lx == ly;
         });
}

}  // namespace

std::string_view label_name(Emotion e) {
  return e == Emotion::kAmbiguous ? "Ambiguous" : kNames[index(e)];
}

std::string_view label_key(Emotion e) {
  return e == Emotion::kAmbiguous ? "ambiguous" : kKeys[index(e)];
}

int label_to_id(std::string_view name) {
  for (int i = 0; i < kNumEmotions; ++i) {
    if (iequals(name, kNames[static_cast<std::size_t>(i)])) return i;
  }
  throw ValidationError(fmt::format("unknown emotion label '{}'", name));
}

std::string id_to_label(int id) {
  const auto e = emotion_from_code(id);
  if (!e) throw ValidationError(fmt::format("unknown emotion id {}", id));
  return std::string(label_name(*e));
}

std::optional<Emotion> emotion_from_code(int id) {
  if (id == -1) return Emotion::kAmbiguous;
  if (id < 0 || id >= kNumEmotions) return std::nullopt;
  return static_cast<Emotion>(id);
}

std::optional<Emotion> parse_emotion(std::string_view text) {
  for (int i = 0; i < kNumEmotions; ++i) {
    if (iequals(text, kNames[static_cast<std::size_t>(i)])) return static_cast<Emotion>(i);
  }
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec == std::errc{} && ptr == text.data() + text.size() && value >= 0 &&
      value < kNumEmotions) {
    return static_cast<Emotion>(value);
  }
  return std::nullopt;
}

}  // namespace sessiz
