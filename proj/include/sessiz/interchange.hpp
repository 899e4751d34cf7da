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

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sessiz/score.hpp"

namespace sessiz {

/// Scores text through a model artifact exported by the training side.
///
/// Artifact directory:
///
///     model.onnx        serialized network (opaque here)
///     tokenizer/        tokenizer vocabulary files (opaque here)
///     label_map.json    {"0": "Happy", "1": "Fear", ..., "5": "Anger"}
///     metadata.json     {"name": ..., "version": ..., "serve": ["python3", "serve.py"], ...}
///
/// `serve` is an argv run with the artifact directory as working directory.
/// Its stdin receives one JSON object per line, `{"text": "..."}`, and its
/// stdout must answer each line in order with `{"logits": [z0, ..., z5]}`
/// (indexed by emotion code) or `{"error": "..."}`. A non-zero exit status or
/// a short answer fails the whole batch. One process serves a whole batch.
class InterchangeBackend final : public ScorerBackend {
 public:
  /// Validates the layout and that the label map is exactly the six codes.
  /// Throws ValidationError on a bad artifact, IoError when files are unreadable.
  static InterchangeBackend load(const std::filesystem::path& dir);

  BackendInfo info() const override { return info_; }
  EmotionLogits score(std::string_view text) const override;
  std::vector<ScoreOutcome> score_batch(std::span<const std::string> texts) const override;

  const std::filesystem::path& directory() const { return dir_; }
  const std::vector<std::string>& command() const { return command_; }

 private:
  InterchangeBackend(std::filesystem::path dir, BackendInfo info, std::vector<std::string> command)
      : dir_(std::move(dir)), info_(std::move(info)), command_(std::move(command)) {}

  std::filesystem::path dir_;
  BackendInfo info_;
  std::vector<std::string> command_;
};

}  // namespace sessiz
