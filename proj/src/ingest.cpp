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

#include "sessiz/ingest.hpp"

#include <algorithm>
#include <fstream>

#include <fmt/format.h>

#include "json.hpp"
#include "sessiz/csv.hpp"
#include "sessiz/error.hpp"

namespace sessiz {

namespace {

using json = nlohmann::json;

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(c >= 'A' && c <= 'Z' ? c + ('a' - 'A') : c);
  });
  return out;
}

class PostBuilder {
 public:
  explicit PostBuilder(const LoadOptions& options) : options_(options) {}

  // Returns an error message, or empty on success.
  std::string build(std::string id, std::string_view created_at, std::string text,
                    std::string_view lang, RawPost& out) const {
    if (id.empty()) return "empty id";
    const auto t = options_.time_format ? parse_with_format(created_at, *options_.time_format)
                                        : parse_iso8601(created_at);
    if (!t) return fmt::format("unparseable created_at '{}'", created_at);
    out = RawPost{std::move(id), *t, std::move(text), ascii_lower(lang)};
    return {};
  }

 private:
  const LoadOptions& options_;
};

void check_error_budget(const LoadResult& result, const LoadOptions& options) {
  const std::size_t total = result.posts.size() + result.errors.size();
  if (total == 0 || result.errors.empty()) return;
  if (static_cast<double>(result.errors.size()) <=
      options.max_error_fraction * static_cast<double>(total)) {
    return;
  }
  std::string msg = fmt::format("{} of {} records malformed (limit {:.0f}%)",
                                result.errors.size(), total, options.max_error_fraction * 100);
  const std::size_t shown = std::min<std::size_t>(result.errors.size(), 5);
  for (std::size_t i = 0; i < shown; ++i) {
    msg += fmt::format("; line {}: {}", result.errors[i].line, result.errors[i].message);
  }
  throw DataError(msg);
}

LoadResult load_csv(std::istream& in, const LoadOptions& options) {
  LoadResult result;
  csv::Reader reader(in);
  std::optional<csv::Record> head;
  try {
    head = reader.next();
  } catch (const csv::ParseError& e) {
    throw DataError(fmt::format("line {}: malformed header: {}", e.line(), e.what()));
  }
  if (!head) return result;

  std::vector<std::string> names;
  for (const auto& f : head->fields) names.push_back(ascii_lower(f));
  const csv::Header header(std::move(names));
  const auto id_col = header.find("id");
  const auto time_col = header.find("created_at");
  const auto text_col = header.find("text");
  const auto lang_col = header.find("lang");
  if (!id_col || !time_col || !text_col || !lang_col) {
    throw DataError("CSV header must contain id, created_at, text, lang");
  }
  const std::size_t width = head->fields.size();

  const PostBuilder builder(options);
  while (true) {
    std::optional<csv::Record> rec;
    try {
      rec = reader.next();
    } catch (const csv::ParseError& e) {
      result.errors.push_back({e.line(), e.what()});
      continue;
    }
    if (!rec) break;
    if (rec->fields.size() != width) {
      result.errors.push_back(
          {rec->line, fmt::format("expected {} fields, got {}", width, rec->fields.size())});
      continue;
    }
    auto& f = rec->fields;
    RawPost post;
    auto err = builder.build(std::move(f[*id_col]), f[*time_col], std::move(f[*text_col]),
                             f[*lang_col], post);
    if (err.empty()) {
      result.posts.push_back(std::move(post));
    } else {
      result.errors.push_back({rec->line, std::move(err)});
    }
  }
  return result;
}

LoadResult load_jsonl(std::istream& in, const LoadOptions& options) {
  LoadResult result;
  const PostBuilder builder(options);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    const json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (!obj.is_object()) {
      result.errors.push_back({lineno, "not a JSON object"});
      continue;
    }
    const auto field = [&](const char* key) -> std::optional<std::string> {
      const auto it = obj.find(key);
      if (it == obj.end()) return std::nullopt;
      if (it->is_string()) return it->get<std::string>();
      if (it->is_number_integer()) return it->dump();
      return std::nullopt;
    };
    auto id = field("id");
    auto created = field("created_at");
    auto text = field("text");
    auto lang = field("lang");
    if (!id || !created || !text || !lang) {
      result.errors.push_back({lineno, "missing or non-string id/created_at/text/lang"});
      continue;
    }
    RawPost post;
    auto err = builder.build(std::move(*id), *created, std::move(*text), *lang, post);
    if (err.empty()) {
      result.posts.push_back(std::move(post));
    } else {
      result.errors.push_back({lineno, std::move(err)});
    }
  }
  return result;
}

}  // namespace

InputFormat parse_input_format(std::string_view name) {
  if (name == "csv") return InputFormat::kCsv;
  if (name == "jsonl") return InputFormat::kJsonl;
  throw ValidationError(fmt::format("unknown input format '{}' (expected csv or jsonl)", name));
}

LoadResult load_posts(std::istream& in, const LoadOptions& options) {
  LoadResult result =
      options.format == InputFormat::kCsv ? load_csv(in, options) : load_jsonl(in, options);
  check_error_budget(result, options);
  return result;
}

LoadResult load_posts(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return load_posts(in, options);
}

std::vector<RawPost> filter_window(std::span<const RawPost> posts, const TimeWindow& window) {
  std::vector<RawPost> out;
  std::copy_if(posts.begin(), posts.end(), std::back_inserter(out),
               [&](const RawPost& p) { return window.contains(p.created_at); });
  return out;
}

std::vector<RawPost> filter_language(std::span<const RawPost> posts, std::string_view tag) {
  if (tag.empty()) throw ValidationError("language tag must not be empty");
  const std::string want = ascii_lower(tag);
  std::vector<RawPost> out;
  std::copy_if(posts.begin(), posts.end(), std::back_inserter(out),
               [&](const RawPost& p) { return ascii_lower(p.lang) == want; });
  return out;
}

void write_posts_jsonl(std::ostream& out, std::span<const RawPost> posts) {
  for (const auto& p : posts) {
    nlohmann::ordered_json obj = {{"id", p.id},
                {"created_at", format_iso8601(p.created_at)},
                {"text", p.text},
                {"lang", p.lang}};
    out << obj.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace) << '\n';
  }
}

}  // namespace sessiz
