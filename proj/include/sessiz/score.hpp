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
#include <filesystem>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sessiz/emotion.hpp"
#include "sessiz/normalize.hpp"
#include "sessiz/time.hpp"

namespace sessiz {

inline constexpr double kDefaultThreshold = 0.6;

/// Raw model scores indexed by emotion code.
struct EmotionLogits {
  std::array<double, kNumEmotions> values{};
};

/// Softmax output; entries are positive and sum to 1.
struct EmotionProbabilities {
  std::array<double, kNumEmotions> values{};
};

/// Thresholded decision. label is kAmbiguous exactly when confidence (the
/// largest probability) fell below the threshold.
struct Prediction {
  Emotion label = Emotion::kAmbiguous;
  double confidence = 0.0;

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

struct BackendInfo {
  std::string name;
  std::string version;
};

/// Outcome of scoring one text inside a batch: logits, or an error message.
struct ScoreOutcome {
  std::optional<EmotionLogits> logits;
  std::string error;
};

/// Text -> logits. Implementations must be deterministic for a fixed model
/// and input, and safe to call concurrently once constructed.
class ScorerBackend {
 public:
  virtual ~ScorerBackend() = default;

  virtual BackendInfo info() const = 0;

  /// Throws BackendError on failure.
  virtual EmotionLogits score(std::string_view text) const = 0;

  /// Default calls score() per text and captures BackendError per item.
  virtual std::vector<ScoreOutcome> score_batch(std::span<const std::string> texts) const;
};

/// Max-subtracted softmax. Throws ValidationError on a non-finite logit.
EmotionProbabilities softmax(const EmotionLogits& logits);

/// Throws ValidationError unless 0 < threshold <= 1.
void validate_threshold(double threshold);

/// Index of the largest probability; ties go to the lowest code.
Emotion argmax(const EmotionProbabilities& probabilities);

/// Applies the confidence threshold to a probability vector.
Prediction decide(const EmotionProbabilities& probabilities, double threshold = kDefaultThreshold);

/// softmax(backend(text)) followed by decide().
Prediction predict(std::string_view text, const ScorerBackend& backend,
                   double threshold = kDefaultThreshold);

/// One text to score; created_at is absent for corpus sentences.
struct ScoringInput {
  std::string id;
  std::optional<Timestamp> created_at;
  std::string text;
};

std::vector<ScoringInput> scoring_inputs(std::span<const NormalizedPost> posts);

struct ScoredPost {
  std::string id;
  std::optional<Timestamp> created_at;
  Prediction prediction;

  friend bool operator==(const ScoredPost&, const ScoredPost&) = default;
};

struct PostError {
  std::string id;
  std::string message;
};

struct BatchResult {
  std::vector<ScoredPost> predictions;
  std::vector<PostError> errors;
};

/// One prediction per input, in input order. When any input fails and
/// `skip_errors` is false, throws BackendError naming the first failing id;
/// otherwise failed inputs are left out of `predictions` and listed in `errors`.
BatchResult batch_predict(std::span<const ScoringInput> inputs, const ScorerBackend& backend,
                          double threshold = kDefaultThreshold, bool skip_errors = false);

/// Test double standing in for a trained model. Logits are keyword hit
/// counts per class; a token hits when it starts with a (lowercased) keyword,
/// which tolerates Turkish suffixes. No hits, or a tie for the top count,
/// gives all-zero logits (uniform probabilities).
class LexiconMockBackend final : public ScorerBackend {
 public:
  /// Every emotion needs at least one keyword; throws ValidationError otherwise.
  explicit LexiconMockBackend(const std::map<Emotion, std::vector<std::string>>& keywords);

  /// `{"happy": ["..."], "fear": [...], ...}`; label names are case-insensitive.
  static LexiconMockBackend load(const std::filesystem::path& json_file);

  BackendInfo info() const override { return {"lexicon-mock", "1"}; }
  EmotionLogits score(std::string_view text) const override;

 private:
  std::array<std::vector<std::string>, kNumEmotions> keywords_;
};

enum class BackendKind { kMock, kInterchange };

BackendKind parse_backend_kind(std::string_view name);

/// Mock: `model_dir/keywords.json`. Interchange: see InterchangeBackend.
std::unique_ptr<ScorerBackend> load_backend(BackendKind kind,
                                            const std::filesystem::path& model_dir);

/// `id,created_at,label_id,label_name,confidence`; ambiguous rows are
/// `-1,ambiguous`; confidence has six decimals; created_at may be empty.
void write_predictions(std::ostream& out, std::span<const ScoredPost> predictions);
std::vector<ScoredPost> read_predictions(std::istream& in);

}  // namespace sessiz
