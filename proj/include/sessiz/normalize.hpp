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

#include <cstddef>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sessiz/ingest.hpp"
#include "sessiz/time.hpp"

namespace sessiz {

struct EmojiLexiconEntry {
  std::u32string code_points;
  std::string glyph;
  std::string description_en;
  std::string translation_tr;  // original case; lowercased by the pipeline
};

/// Emoji -> Turkish lexicon with longest-sequence lookup.
///
/// Lookup keys ignore variation selectors (U+FE0E, U+FE0F), so text written
/// with or without the emoji presentation selector matches the same entry.
/// When two entries collapse to the same key, the first one wins.
class EmojiLexicon {
 public:
  EmojiLexicon() = default;

  /// Throws DataError on entries with empty code points, a glyph that does not
  /// decode to exactly those code points, or an empty translation.
  explicit EmojiLexicon(std::vector<EmojiLexiconEntry> entries);

  /// UTF-8 CSV with header `Unicode.Code.Point.s.,Emoji,Description,Translated`;
  /// code points as `U+XXXX` tokens separated by spaces.
  static EmojiLexicon load(const std::filesystem::path& path);
  static EmojiLexicon load(std::istream& in);

  std::span<const EmojiLexiconEntry> entries() const { return entries_; }

  /// Longest entry whose key is a prefix of `text`; nullptr when none.
  /// `matched` receives the number of code points consumed.
  const EmojiLexiconEntry* match(std::u32string_view text, std::size_t& matched) const;

  std::size_t max_key_length() const { return max_len_; }

 private:
  std::vector<EmojiLexiconEntry> entries_;
  std::unordered_map<std::u32string, std::size_t> index_;
  std::size_t max_len_ = 0;
};

/// Formats `U+1F926 U+200D U+2642`; parse accepts the same.
std::string format_code_points(std::u32string_view cps);
std::u32string parse_code_points(std::string_view text);

/// Characters deleted when not covered by the lexicon: Extended_Pictographic,
/// emoji modifiers, regional indicators, the keycap mark and tag characters.
bool is_emoji_code_point(char32_t c);

struct NormalizeStats {
  std::size_t emoji_translated = 0;
  std::size_t emoji_deleted = 0;

  NormalizeStats& operator+=(const NormalizeStats& o) {
    emoji_translated += o.emoji_translated;
    emoji_deleted += o.emoji_deleted;
    return *this;
  }
};

// Individual rules. Text is UTF-8 throughout; `\w` is Unicode-aware.

/// `RT @\w+:` -> `(retweetlemek)`
std::string replace_retweets(std::string_view text);
/// `\w+://\S+` -> `(bağlantı adresi)`
std::string replace_urls(std::string_view text);
/// `@[A-Za-z0-9_]*` -> `(kullanıcı)`
std::string replace_mentions(std::string_view text);
/// `#(\w+)` -> `(\1)`
std::string unwrap_hashtags(std::string_view text);
/// Lexicon glyphs -> `(translation)`, longest match first; other emoji deleted.
std::string translate_emoji(std::string_view text, const EmojiLexicon& lexicon,
                            NormalizeStats* stats = nullptr);
/// Drops control, format, private-use, unassigned and variation-selector code
/// points, U+FFFD, and any `#` not followed by a word character.
std::string remove_unwanted_characters(std::string_view text);
/// Turkish casing: I -> ı, İ -> i, everything else per Unicode lowercase.
std::string turkish_lowercase(std::string_view text);
/// Whitespace runs -> one space; ends trimmed.
std::string collapse_whitespace(std::string_view text);

/// The full rule chain, in order: retweets, URLs, mentions, hashtags, emoji,
/// unwanted characters, lowercase, whitespace. The chain is re-applied until
/// the text stops changing (deleting a character can join two fragments into
/// a new match), so the result is a fixpoint.
std::string normalize_text(std::string_view text, const EmojiLexicon& lexicon,
                           NormalizeStats* stats = nullptr);

struct NormalizedPost {
  std::string id;
  Timestamp created_at;
  std::string text;

  friend bool operator==(const NormalizedPost&, const NormalizedPost&) = default;
};

NormalizedPost normalize_post(const RawPost& post, const EmojiLexicon& lexicon,
                              NormalizeStats* stats = nullptr);

/// Normalizes every post, splitting the work over `threads` workers (0 picks
/// hardware concurrency). Output order equals input order; nothing is deduplicated.
std::vector<NormalizedPost> normalize_posts(std::span<const RawPost> posts,
                                            const EmojiLexicon& lexicon,
                                            NormalizeStats* stats = nullptr,
                                            unsigned threads = 0);

/// JSONL with {id, created_at, text}.
void write_normalized_jsonl(std::ostream& out, std::span<const NormalizedPost> posts);
/// Throws DataError with the line number on malformed lines.
std::vector<NormalizedPost> read_normalized_jsonl(std::istream& in);

}  // namespace sessiz
