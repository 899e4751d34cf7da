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
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sessiz/time.hpp"

namespace sessiz {

/// A social-media message as loaded. Only these four fields are ever kept;
/// author and engagement columns are dropped at load time.
struct RawPost {
  std::string id;
  Timestamp created_at;
  std::string text;
  std::string lang;  // lowercase

  friend bool operator==(const RawPost&, const RawPost&) = default;
};

enum class InputFormat { kCsv, kJsonl };

/// "csv" / "jsonl"; throws ValidationError otherwise.
InputFormat parse_input_format(std::string_view name);

struct RecordError {
  std::size_t line = 0;
  std::string message;
};

struct LoadResult {
  std::vector<RawPost> posts;
  std::vector<RecordError> errors;
};

struct LoadOptions {
  InputFormat format = InputFormat::kCsv;
  /// strftime-style override for created_at; ISO-8601 when unset.
  std::optional<std::string> time_format;
  /// Abort when malformed records exceed this fraction of all records.
  double max_error_fraction = 0.10;
};

/// Reads posts in file order. Unreadable file -> IoError. Malformed records
/// are collected in `errors`; if they exceed `max_error_fraction` of the
/// records seen, throws DataError listing the first few.
LoadResult load_posts(const std::filesystem::path& path, const LoadOptions& options);
LoadResult load_posts(std::istream& in, const LoadOptions& options);

std::vector<RawPost> filter_window(std::span<const RawPost> posts, const TimeWindow& window);

/// Keeps posts whose lang equals `tag` ignoring ASCII case. Empty tag -> ValidationError.
std::vector<RawPost> filter_language(std::span<const RawPost> posts, std::string_view tag);

/// One JSON object per line with exactly {id, created_at, text, lang}.
void write_posts_jsonl(std::ostream& out, std::span<const RawPost> posts);

}  // namespace sessiz
