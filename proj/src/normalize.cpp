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

#include "sessiz/normalize.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>
#include <unicode/locid.h>
#include <unicode/regex.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "json.hpp"
#include "sessiz/csv.hpp"
#include "sessiz/error.hpp"

namespace sessiz {

namespace {

constexpr int kMaxPasses = 8;

icu::UnicodeString from_utf8(std::string_view s) {
  return icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
}

std::string to_utf8(const icu::UnicodeString& u) {
  std::string out;
  u.toUTF8String(out);
  return out;
}

std::u32string to_u32(const icu::UnicodeString& u) {
  std::u32string out;
  out.reserve(static_cast<std::size_t>(u.length()));
  for (int32_t i = 0; i < u.length(); i = u.moveIndex32(i, 1)) {
    out.push_back(static_cast<char32_t>(u.char32At(i)));
  }
  return out;
}

bool is_variation_selector(char32_t c) {
  return (c >= 0xFE00 && c <= 0xFE0F) || (c >= 0xE0100 && c <= 0xE01EF);
}

std::u32string strip_variation_selectors(std::u32string_view cps) {
  std::u32string out;
  out.reserve(cps.size());
  for (const char32_t c : cps) {
    if (c != 0xFE0E && c != 0xFE0F) out.push_back(c);
  }
  return out;
}

// A compiled ICU pattern plus its replacement. RegexPattern is immutable and
// safe to share; each apply() call gets its own matcher.
class Rule {
 public:
  Rule(const char* pattern, const char* replacement)
      : replacement_(icu::UnicodeString::fromUTF8(replacement)) {
    UErrorCode status = U_ZERO_ERROR;
    UParseError parse_error;
    pattern_.reset(icu::RegexPattern::compile(icu::UnicodeString::fromUTF8(pattern), parse_error,
                                              status));
    if (U_FAILURE(status)) {
      throw std::logic_error(fmt::format("bad pattern {}: {}", pattern, u_errorName(status)));
    }
  }

  icu::UnicodeString apply(const icu::UnicodeString& text) const {
    UErrorCode status = U_ZERO_ERROR;
    std::unique_ptr<icu::RegexMatcher> matcher(pattern_->matcher(text, status));
    icu::UnicodeString out = U_SUCCESS(status) ? matcher->replaceAll(replacement_, status) : text;
    if (U_FAILURE(status)) {
      throw std::runtime_error(fmt::format("regex replace failed: {}", u_errorName(status)));
    }
    return out;
  }

 private:
  std::unique_ptr<icu::RegexPattern> pattern_;
  icu::UnicodeString replacement_;
};

const Rule& retweet_rule() {
  static const Rule rule(R"(RT @\w+:)", "(retweetlemek)");
  return rule;
}

const Rule& url_rule() {
  static const Rule rule(R"(\w+://\S+)", "(bağlantı adresi)");
  return rule;
}

const Rule& mention_rule() {
  static const Rule rule(R"(@[A-Za-z0-9_]*)", "(kullanıcı)");
  return rule;
}

const Rule& hashtag_rule() {
  static const Rule rule(R"(#(\w+))", "($1)");
  return rule;
}

const Rule& stray_hash_rule() {
  static const Rule rule(R"(#(?!\w))", "");
  return rule;
}

const icu::Locale& turkish_locale() {
  static const icu::Locale locale("tr");
  return locale;
}

icu::UnicodeString translate_emoji_u(const icu::UnicodeString& text, const EmojiLexicon& lexicon,
                                     NormalizeStats* stats) {
  const std::u32string cps = strip_variation_selectors(to_u32(text));
  const std::u32string_view view(cps);
  icu::UnicodeString out;
  std::size_t i = 0;
  while (i < cps.size()) {
    std::size_t matched = 0;
    if (const auto* entry = lexicon.match(view.substr(i), matched)) {
      out.append(u'(');
      out.append(from_utf8(entry->translation_tr));
      out.append(u')');
      i += matched;
      if (stats) ++stats->emoji_translated;
      continue;
    }
    if (is_emoji_code_point(cps[i])) {
      if (stats) ++stats->emoji_deleted;
    } else {
      out.append(static_cast<UChar32>(cps[i]));
    }
    ++i;
  }
  return out;
}

icu::UnicodeString remove_unwanted_u(const icu::UnicodeString& input) {
  const icu::UnicodeString text = stray_hash_rule().apply(input);
  icu::UnicodeString out;
  for (int32_t i = 0; i < text.length(); i = text.moveIndex32(i, 1)) {
    const UChar32 c = text.char32At(i);
    const auto type = static_cast<UCharCategory>(u_charType(c));
    bool drop = false;
    switch (type) {
      case U_CONTROL_CHAR:
        drop = !u_isUWhiteSpace(c);
        break;
      case U_FORMAT_CHAR:
      case U_SURROGATE:
      case U_PRIVATE_USE_CHAR:
      case U_UNASSIGNED:
        drop = true;
        break;
      default:
        drop = is_variation_selector(static_cast<char32_t>(c)) || c == 0xFFFD;
    }
    if (!drop) out.append(c);
  }
  return out;
}

icu::UnicodeString lowercase_u(const icu::UnicodeString& text) {
  icu::UnicodeString out(text);
  out.toLower(turkish_locale());
  return out;
}

icu::UnicodeString collapse_whitespace_u(const icu::UnicodeString& text) {
  icu::UnicodeString out;
  bool pending_space = false;
  for (int32_t i = 0; i < text.length(); i = text.moveIndex32(i, 1)) {
    const UChar32 c = text.char32At(i);
    if (u_isUWhiteSpace(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.isEmpty()) out.append(u' ');
    pending_space = false;
    out.append(c);
  }
  return out;
}

icu::UnicodeString apply_chain(const icu::UnicodeString& text, const EmojiLexicon& lexicon,
                               NormalizeStats* stats) {
  icu::UnicodeString s = retweet_rule().apply(text);
  s = url_rule().apply(s);
  s = mention_rule().apply(s);
  s = hashtag_rule().apply(s);
  s = translate_emoji_u(s, lexicon, stats);
  s = remove_unwanted_u(s);
  s = lowercase_u(s);
  return collapse_whitespace_u(s);
}

std::string trim_ascii(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

// ---------------------------------------------------------------------------
// Lexicon

EmojiLexicon::EmojiLexicon(std::vector<EmojiLexiconEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.code_points.empty()) {
      throw DataError(fmt::format("emoji entry {}: no code points", i + 1));
    }
    if (to_u32(from_utf8(e.glyph)) != e.code_points) {
      throw DataError(fmt::format("emoji entry {}: glyph does not match {}", i + 1,
                                  format_code_points(e.code_points)));
    }
    if (trim_ascii(e.translation_tr).empty()) {
      throw DataError(fmt::format("emoji entry {}: empty translation", i + 1));
    }
    std::u32string key = strip_variation_selectors(e.code_points);
    if (key.empty()) continue;
    max_len_ = std::max(max_len_, key.size());
    index_.emplace(std::move(key), i);
  }
}

EmojiLexicon EmojiLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open emoji lexicon " + path.string());
  return load(in);
}

EmojiLexicon EmojiLexicon::load(std::istream& in) {
  csv::Reader reader(in);
  std::vector<EmojiLexiconEntry> entries;
  try {
    const auto head = reader.next();
    if (!head) throw DataError("emoji lexicon is empty");
    const csv::Header header(head->fields);
    const auto cp_col = header.find("Unicode.Code.Point.s.");
    const auto glyph_col = header.find("Emoji");
    const auto desc_col = header.find("Description");
    const auto tr_col = header.find("Translated");
    if (!cp_col || !glyph_col || !desc_col || !tr_col) {
      throw DataError(
          "emoji lexicon header must be Unicode.Code.Point.s.,Emoji,Description,Translated");
    }
    while (auto rec = reader.next()) {
      if (rec->fields.size() != head->fields.size()) {
        throw DataError(fmt::format("emoji lexicon line {}: expected {} fields", rec->line,
                                    head->fields.size()));
      }
      EmojiLexiconEntry entry;
      try {
        entry.code_points = parse_code_points(rec->fields[*cp_col]);
      } catch (const DataError& e) {
        throw DataError(fmt::format("emoji lexicon line {}: {}", rec->line, e.what()));
      }
      entry.glyph = rec->fields[*glyph_col];
      entry.description_en = rec->fields[*desc_col];
      entry.translation_tr = rec->fields[*tr_col];
      if (to_u32(from_utf8(entry.glyph)) != entry.code_points) {
        throw DataError(fmt::format("emoji lexicon line {}: glyph does not match {}", rec->line,
                                    rec->fields[*cp_col]));
      }
      if (trim_ascii(entry.translation_tr).empty()) {
        throw DataError(fmt::format("emoji lexicon line {}: empty translation", rec->line));
      }
      entries.push_back(std::move(entry));
    }
  } catch (const csv::ParseError& e) {
    throw DataError(fmt::format("emoji lexicon line {}: {}", e.line(), e.what()));
  }
  return EmojiLexicon(std::move(entries));
}

const EmojiLexiconEntry* EmojiLexicon::match(std::u32string_view text,
                                             std::size_t& matched) const {
  const std::size_t longest = std::min(max_len_, text.size());
  for (std::size_t len = longest; len > 0; --len) {
    const auto it = index_.find(std::u32string(text.substr(0, len)));
    if (it != index_.end()) {
      matched = len;
      return &entries_[it->second];
    }
  }
  matched = 0;
  return nullptr;
}

std::string format_code_points(std::u32string_view cps) {
  std::string out;
  for (const char32_t c : cps) {
    if (!out.empty()) out.push_back(' ');
    out += fmt::format("U+{:04X}", static_cast<std::uint32_t>(c));
  }
  return out;
}

std::u32string parse_code_points(std::string_view text) {
  std::u32string out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ' || text[i] == '\t') {
      ++i;
      continue;
    }
    if (i + 2 > text.size() || (text[i] != 'U' && text[i] != 'u') || text[i + 1] != '+') {
      throw DataError(fmt::format("bad code point list '{}'", text));
    }
    i += 2;
    std::uint32_t value = 0;
    std::size_t digits = 0;
    while (i < text.size() && std::isxdigit(static_cast<unsigned char>(text[i]))) {
      const char c = text[i++];
      value = value * 16 +
              static_cast<std::uint32_t>(std::isdigit(static_cast<unsigned char>(c))
                                             ? c - '0'
                                             : (std::tolower(static_cast<unsigned char>(c)) - 'a' + 10));
      if (++digits > 6) break;
    }
    if (digits < 4 || digits > 6 || value > 0x10FFFF) {
      throw DataError(fmt::format("bad code point list '{}'", text));
    }
    out.push_back(static_cast<char32_t>(value));
  }
  if (out.empty()) throw DataError("empty code point list");
  return out;
}

bool is_emoji_code_point(char32_t c) {
  const auto cp = static_cast<UChar32>(c);
  return u_hasBinaryProperty(cp, UCHAR_EXTENDED_PICTOGRAPHIC) ||
         u_hasBinaryProperty(cp, UCHAR_EMOJI_MODIFIER) ||
         u_hasBinaryProperty(cp, UCHAR_REGIONAL_INDICATOR) || c == 0x20E3 ||
         (c >= 0xE0020 && c <= 0xE007F);
}

// ---------------------------------------------------------------------------
// Rules

std::string replace_retweets(std::string_view text) {
  return to_utf8(retweet_rule().apply(from_utf8(text)));
}

std::string replace_urls(std::string_view text) {
  return to_utf8(url_rule().apply(from_utf8(text)));
}

std::string replace_mentions(std::string_view text) {
  return to_utf8(mention_rule().apply(from_utf8(text)));
}

std::string unwrap_hashtags(std::string_view text) {
  return to_utf8(hashtag_rule().apply(from_utf8(text)));
}

std::string translate_emoji(std::string_view text, const EmojiLexicon& lexicon,
                            NormalizeStats* stats) {
  return to_utf8(translate_emoji_u(from_utf8(text), lexicon, stats));
}

std::string remove_unwanted_characters(std::string_view text) {
  return to_utf8(remove_unwanted_u(from_utf8(text)));
}

std::string turkish_lowercase(std::string_view text) {
  return to_utf8(lowercase_u(from_utf8(text)));
}

std::string collapse_whitespace(std::string_view text) {
  return to_utf8(collapse_whitespace_u(from_utf8(text)));
}

std::string normalize_text(std::string_view text, const EmojiLexicon& lexicon,
                           NormalizeStats* stats) {
  icu::UnicodeString current = from_utf8(text);
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    icu::UnicodeString next = apply_chain(current, lexicon, stats);
    const bool stable = next == current;
    current = std::move(next);
    if (stable) break;
  }
  return to_utf8(current);
}

NormalizedPost normalize_post(const RawPost& post, const EmojiLexicon& lexicon,
                              NormalizeStats* stats) {
  return NormalizedPost{post.id, post.created_at, normalize_text(post.text, lexicon, stats)};
}

std::vector<NormalizedPost> normalize_posts(std::span<const RawPost> posts,
                                            const EmojiLexicon& lexicon, NormalizeStats* stats,
                                            unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, posts.size() / 64)));

  std::vector<NormalizedPost> out(posts.size());
  std::vector<NormalizeStats> partial(threads);
  const std::size_t chunk = (posts.size() + threads - 1) / threads;
  {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(posts.size(), begin + chunk);
        for (std::size_t i = begin; i < end; ++i) {
          out[i] = normalize_post(posts[i], lexicon, &partial[w]);
        }
      });
    }
  }
  if (stats) {
    for (const auto& p : partial) *stats += p;
  }
  return out;
}

void write_normalized_jsonl(std::ostream& out, std::span<const NormalizedPost> posts) {
  for (const auto& p : posts) {
    const nlohmann::ordered_json obj = {
        {"id", p.id}, {"created_at", format_iso8601(p.created_at)}, {"text", p.text}};
    out << obj.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace) << '\n';
  }
}

std::vector<NormalizedPost> read_normalized_jsonl(std::istream& in) {
  std::vector<NormalizedPost> posts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto obj = nlohmann::json::parse(line, nullptr, false);
    const auto str = [&](const char* key) -> const std::string* {
      if (!obj.is_object()) return nullptr;
      const auto it = obj.find(key);
      return it != obj.end() && it->is_string() ? it->get_ptr<const std::string*>() : nullptr;
    };
    const auto* id = str("id");
    const auto* created = str("created_at");
    const auto* text = str("text");
    const auto t = created ? parse_iso8601(*created) : std::nullopt;
    if (!id || id->empty() || !t || !text) {
      throw DataError(fmt::format("normalized posts line {}: expected id, created_at, text", lineno));
    }
    posts.push_back(NormalizedPost{*id, *t, *text});
  }
  return posts;
}

}  // namespace sessiz
