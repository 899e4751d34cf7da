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
#include <charconv>
#include <cmath>
#include <fstream>

#include <fmt/format.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "json.hpp"
#include "sessiz/csv.hpp"
#include "sessiz/error.hpp"
#include "sessiz/interchange.hpp"

namespace sessiz {

namespace {

// Maximal runs of letters and digits, as UTF-8.
std::vector<std::string> word_tokens(std::string_view text) {
  const auto u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  std::vector<std::string> tokens;
  icu::UnicodeString current;
  const auto flush = [&] {
    if (current.isEmpty()) return;
    std::string utf8;
    current.toUTF8String(utf8);
    tokens.push_back(std::move(utf8));
    current.remove();
  };
  for (int32_t i = 0; i < u.length(); i = u.moveIndex32(i, 1)) {
    const UChar32 c = u.char32At(i);
    if (u_isalnum(c) || u_getIntPropertyValue(c, UCHAR_GENERAL_CATEGORY_MASK) & U_GC_M_MASK) {
      current.append(c);
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::optional<double> parse_double(std::string_view s) {
  double value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

std::vector<ScoreOutcome> ScorerBackend::score_batch(std::span<const std::string> texts) const {
  std::vector<ScoreOutcome> out;
  out.reserve(texts.size());
  for (const auto& text : texts) {
    try {
      out.push_back({score(text), {}});
    } catch (const BackendError& e) {
      out.push_back({std::nullopt, e.what()});
    }
  }
  return out;
}

EmotionProbabilities softmax(const EmotionLogits& logits) {
  for (const double z : logits.values) {
    if (!std::isfinite(z)) throw ValidationError("softmax: non-finite logit");
  }
  const double peak = *std::max_element(logits.values.begin(), logits.values.end());
  EmotionProbabilities p;
  double total = 0.0;
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    p.values[i] = std::exp(logits.values[i] - peak);
    total += p.values[i];
  }
  for (double& v : p.values) v /= total;
  return p;
}

void validate_threshold(double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw ValidationError(fmt::format("threshold must be in (0, 1], got {}", threshold));
  }
}

Emotion argmax(const EmotionProbabilities& probabilities) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < probabilities.values.size(); ++i) {
    if (probabilities.values[i] > probabilities.values[best]) best = i;
  }
  return static_cast<Emotion>(best);
}

Prediction decide(const EmotionProbabilities& probabilities, double threshold) {
  validate_threshold(threshold);
  const Emotion top = argmax(probabilities);
  const double confidence = probabilities.values[index(top)];
  return Prediction{confidence >= threshold ? top : Emotion::kAmbiguous, confidence};
}

Prediction predict(std::string_view text, const ScorerBackend& backend, double threshold) {
  validate_threshold(threshold);
  const EmotionLogits logits = backend.score(text);
  try {
    return decide(softmax(logits), threshold);
  } catch (const ValidationError& e) {
    throw BackendError(fmt::format("{} returned unusable logits: {}", backend.info().name, e.what()));
  }
}

std::vector<ScoringInput> scoring_inputs(std::span<const NormalizedPost> posts) {
  std::vector<ScoringInput> inputs;
  inputs.reserve(posts.size());
  for (const auto& p : posts) inputs.push_back({p.id, p.created_at, p.text});
  return inputs;
}

BatchResult batch_predict(std::span<const ScoringInput> inputs, const ScorerBackend& backend,
                          double threshold, bool skip_errors) {
  validate_threshold(threshold);
  std::vector<std::string> texts;
  texts.reserve(inputs.size());
  for (const auto& in : inputs) texts.push_back(in.text);

  const std::vector<ScoreOutcome> outcomes = backend.score_batch(texts);
  if (outcomes.size() != inputs.size()) {
    throw BackendError(fmt::format("{} returned {} results for {} inputs", backend.info().name,
                                   outcomes.size(), inputs.size()));
  }

  BatchResult result;
  result.predictions.reserve(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    std::string error = outcomes[i].error;
    if (outcomes[i].logits) {
      try {
        result.predictions.push_back(
            {inputs[i].id, inputs[i].created_at, decide(softmax(*outcomes[i].logits), threshold)});
        continue;
      } catch (const ValidationError& e) {
        error = e.what();
      }
    }
    if (error.empty()) error = "no logits returned";
    if (!skip_errors) {
      throw BackendError(fmt::format("post {}: {}", inputs[i].id, error));
    }
    result.errors.push_back({inputs[i].id, std::move(error)});
  }
  return result;
}

LexiconMockBackend::LexiconMockBackend(
    const std::map<Emotion, std::vector<std::string>>& keywords) {
  for (const Emotion e : kEmotions) {
    const auto it = keywords.find(e);
    if (it == keywords.end() || it->second.empty()) {
      throw ValidationError(fmt::format("mock keyword table has no keywords for {}", label_name(e)));
    }
    for (const auto& kw : it->second) {
      const std::string lowered = turkish_lowercase(kw);
      if (lowered.find_first_not_of(' ') == std::string::npos) {
        throw ValidationError(fmt::format("empty keyword for {}", label_name(e)));
      }
      keywords_[index(e)].push_back(lowered);
    }
  }
}

LexiconMockBackend LexiconMockBackend::load(const std::filesystem::path& json_file) {
  std::ifstream in(json_file);
  if (!in) throw IoError("cannot open keyword table " + json_file.string());
  const auto doc = nlohmann::json::parse(in, nullptr, false);
  if (!doc.is_object()) throw ValidationError(json_file.string() + ": expected a JSON object");
  std::map<Emotion, std::vector<std::string>> table;
  for (const auto& [key, value] : doc.items()) {
    const auto e = parse_emotion(key);
    if (!e || !value.is_array()) {
      throw ValidationError(fmt::format("{}: bad entry '{}'", json_file.string(), key));
    }
    for (const auto& kw : value) {
      if (!kw.is_string()) {
        throw ValidationError(fmt::format("{}: non-string keyword for '{}'", json_file.string(), key));
      }
      table[*e].push_back(kw.get<std::string>());
    }
  }
  return LexiconMockBackend(table);
}

EmotionLogits LexiconMockBackend::score(std::string_view text) const {
  std::array<std::size_t, kNumEmotions> hits{};
  for (const auto& token : word_tokens(turkish_lowercase(text))) {
    for (std::size_t c = 0; c < keywords_.size(); ++c) {
      for (const auto& kw : keywords_[c]) {
        if (token.starts_with(kw)) ++hits[c];
      }
    }
  }
  const std::size_t top = *std::max_element(hits.begin(), hits.end());
  EmotionLogits logits;
  if (top == 0 || std::count(hits.begin(), hits.end(), top) > 1) return logits;
  for (std::size_t c = 0; c < hits.size(); ++c) logits.values[c] = static_cast<double>(hits[c]);
  return logits;
}

BackendKind parse_backend_kind(std::string_view name) {
  if (name == "mock") return BackendKind::kMock;
  if (name == "interchange") return BackendKind::kInterchange;
  throw ValidationError(fmt::format("unknown backend '{}' (expected mock or interchange)", name));
}

std::unique_ptr<ScorerBackend> load_backend(BackendKind kind,
                                            const std::filesystem::path& model_dir) {
  if (kind == BackendKind::kMock) {
    return std::make_unique<LexiconMockBackend>(
        LexiconMockBackend::load(model_dir / "keywords.json"));
  }
  return std::make_unique<InterchangeBackend>(InterchangeBackend::load(model_dir));
}

void write_predictions(std::ostream& out, std::span<const ScoredPost> predictions) {
  csv::write_row(out, {"id", "created_at", "label_id", "label_name", "confidence"});
  for (const auto& p : predictions) {
    csv::write_row(out, {p.id, p.created_at ? format_iso8601(*p.created_at) : std::string(),
                         std::to_string(code(p.prediction.label)),
                         std::string(label_key(p.prediction.label)),
                         fmt::format("{:.6f}", p.prediction.confidence)});
  }
}

std::vector<ScoredPost> read_predictions(std::istream& in) {
  std::vector<ScoredPost> out;
  try {
    csv::Reader reader(in);
    const auto head = reader.next();
    if (!head) return out;
    const csv::Header header(head->fields);
    const auto id_col = header.find("id");
    const auto time_col = header.find("created_at");
    const auto label_col = header.find("label_id");
    const auto name_col = header.find("label_name");
    const auto conf_col = header.find("confidence");
    if (!id_col || !time_col || !label_col || !name_col || !conf_col) {
      throw DataError("predictions header must be id,created_at,label_id,label_name,confidence");
    }
    while (auto rec = reader.next()) {
      const auto& f = rec->fields;
      const auto bad = [&](std::string_view what) {
        return DataError(fmt::format("predictions line {}: {}", rec->line, what));
      };
      if (f.size() != head->fields.size()) throw bad("wrong field count");
      int id = 0;
      const auto& label_text = f[*label_col];
      const auto [ptr, ec] =
          std::from_chars(label_text.data(), label_text.data() + label_text.size(), id);
      const auto label = ec == std::errc{} && ptr == label_text.data() + label_text.size()
                             ? emotion_from_code(id)
                             : std::nullopt;
      if (!label) throw bad("bad label_id '" + label_text + "'");
      if (f[*name_col] != label_key(*label)) throw bad("label_name does not match label_id");
      const auto confidence = parse_double(f[*conf_col]);
      if (!confidence || *confidence < 0.0 || *confidence > 1.0) throw bad("bad confidence");
      std::optional<Timestamp> created;
      if (!f[*time_col].empty()) {
        created = parse_iso8601(f[*time_col]);
        if (!created) throw bad("bad created_at");
      }
      out.push_back({f[*id_col], created, Prediction{*label, *confidence}});
    }
  } catch (const csv::ParseError& e) {
    throw DataError(fmt::format("predictions line {}: {}", e.line(), e.what()));
  }
  return out;
}

}  // namespace sessiz
