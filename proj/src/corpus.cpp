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

#include "sessiz/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <unordered_set>

#include <fmt/format.h>

#include "sessiz/csv.hpp"
#include "sessiz/error.hpp"
#include "sessiz/normalize.hpp"
#include "sessiz/rng.hpp"

namespace sessiz {

namespace {

bool is_blank_or_ambiguous(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return true;
  std::string lower(s.substr(b, s.find_last_not_of(" \t") - b + 1));
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  // TREMO spells it "Ambigious" in places.
  return lower == "ambiguous" || lower == "ambigious" || lower == "-1";
}

std::array<std::vector<std::size_t>, kNumEmotions> indices_by_class(
    std::span<const LabeledExample> examples) {
  std::array<std::vector<std::size_t>, kNumEmotions> by_class;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    if (examples[i].emotion == Emotion::kAmbiguous) {
      throw DataError(fmt::format("entry '{}' is labeled ambiguous", examples[i].entry_id));
    }
    by_class[index(examples[i].emotion)].push_back(i);
  }
  return by_class;
}

}  // namespace

ColumnMap ColumnMap::parse(std::string_view spec) {
  ColumnMap map;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    auto end = spec.find(',', pos);
    if (end == std::string_view::npos) end = spec.size();
    const auto item = spec.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size()) {
      throw ValidationError(fmt::format("bad column mapping '{}' (want Field=header)", item));
    }
    const auto key = item.substr(0, eq);
    std::string value(item.substr(eq + 1));
    if (key == "ID") {
      map.id = std::move(value);
    } else if (key == "Entry") {
      map.entry = std::move(value);
    } else if (key == "Emotion") {
      map.emotion = std::move(value);
    } else if (key == "ValidatedEmotion") {
      map.validated = std::move(value);
    } else {
      throw ValidationError(fmt::format("unknown corpus field '{}' in column mapping", key));
    }
  }
  return map;
}

std::vector<LabeledExample> load_corpus(std::istream& in, const ColumnMap& columns) {
  std::vector<LabeledExample> examples;
  try {
    csv::Reader reader(in);
    const auto head = reader.next();
    if (!head) return examples;
    const csv::Header header(head->fields);
    const auto id_col = header.find(columns.id);
    const auto entry_col = header.find(columns.entry);
    const auto emotion_col = header.find(columns.emotion);
    const auto validated_col = header.find(columns.validated);
    if (!id_col || !entry_col || !emotion_col || !validated_col) {
      throw DataError(fmt::format("corpus header must contain {}, {}, {}, {}", columns.id,
                                  columns.entry, columns.emotion, columns.validated));
    }
    while (auto rec = reader.next()) {
      auto& f = rec->fields;
      if (f.size() != head->fields.size()) {
        throw DataError(fmt::format("corpus line {}: expected {} fields, got {}", rec->line,
                                    head->fields.size(), f.size()));
      }
      if (f[*id_col].empty()) throw DataError(fmt::format("corpus line {}: empty id", rec->line));
      if (f[*entry_col].find_first_not_of(" \t\r\n") == std::string::npos) {
        throw DataError(fmt::format("corpus line {}: empty entry", rec->line));
      }
      const auto emotion = parse_emotion(f[*emotion_col]);
      if (!emotion) {
        throw DataError(
            fmt::format("corpus line {}: unknown emotion '{}'", rec->line, f[*emotion_col]));
      }
      std::optional<Emotion> validated;
      if (!is_blank_or_ambiguous(f[*validated_col])) {
        validated = parse_emotion(f[*validated_col]);
        if (!validated) {
          throw DataError(fmt::format("corpus line {}: unknown validated emotion '{}'", rec->line,
                                      f[*validated_col]));
        }
      }
      examples.push_back(
          LabeledExample{std::move(f[*id_col]), std::move(f[*entry_col]), *emotion, validated});
    }
  } catch (const csv::ParseError& e) {
    throw DataError(fmt::format("corpus line {}: {}", e.line(), e.what()));
  }
  return examples;
}

std::vector<LabeledExample> load_corpus(const std::filesystem::path& path,
                                        const ColumnMap& columns) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus " + path.string());
  return load_corpus(in, columns);
}

void write_corpus(std::ostream& out, std::span<const LabeledExample> examples) {
  csv::write_row(out, {"ID", "Entry", "Emotion", "ValidatedEmotion"});
  for (const auto& e : examples) {
    csv::write_row(out, {e.entry_id, e.text, std::string(label_name(e.emotion)),
                         e.validated_emotion ? std::string(label_name(*e.validated_emotion))
                                             : std::string()});
  }
}

std::vector<LabeledExample> filter_validated(std::span<const LabeledExample> examples) {
  std::vector<LabeledExample> out;
  for (const auto& e : examples) {
    if (!e.validated_emotion) continue;
    LabeledExample kept = e;
    kept.emotion = *e.validated_emotion;
    out.push_back(std::move(kept));
  }
  return out;
}

std::vector<LabeledExample> lowercase_texts(std::span<const LabeledExample> examples,
                                            std::size_t* dropped) {
  std::vector<LabeledExample> out;
  out.reserve(examples.size());
  std::size_t removed = 0;
  for (const auto& e : examples) {
    LabeledExample copy = e;
    copy.text = collapse_whitespace(turkish_lowercase(e.text));
    if (copy.text.empty()) {
      ++removed;
      continue;
    }
    out.push_back(std::move(copy));
  }
  if (dropped) *dropped = removed;
  return out;
}

ClassCounts class_counts(std::span<const LabeledExample> examples) {
  ClassCounts counts{};
  for (const auto& e : examples) {
    if (e.emotion != Emotion::kAmbiguous) ++counts[index(e.emotion)];
  }
  return counts;
}

std::vector<LabeledExample> balance(std::span<const LabeledExample> examples,
                                    std::uint64_t seed) {
  auto by_class = indices_by_class(examples);
  for (const Emotion e : kEmotions) {
    if (by_class[index(e)].empty()) {
      throw DataError(fmt::format("cannot balance: no examples labeled {}", label_name(e)));
    }
  }
  const std::size_t target =
      std::min_element(by_class.begin(), by_class.end(),
                       [](const auto& a, const auto& b) { return a.size() < b.size(); })
          ->size();

  SeededRng rng(seed);
  std::vector<LabeledExample> out;
  out.reserve(target * kNumEmotions);
  for (auto& members : by_class) {
    if (members.size() > target) {
      rng.partial_shuffle(std::span(members), target);
      members.resize(target);
      std::sort(members.begin(), members.end());
    }
    for (const std::size_t i : members) out.push_back(examples[i]);
  }
  return out;
}

std::size_t stratified_test_size(std::size_t count, double test_fraction) {
  if (count == 0) return 0;
  // The epsilon absorbs products like 2.4999999999999996 from decimal fractions.
  const auto k = static_cast<std::size_t>(
      std::floor(static_cast<double>(count) * test_fraction + 0.5 + 1e-9));
  return std::min(k, count - 1);
}

SplitCorpus split(std::span<const LabeledExample> examples, double test_fraction,
                  std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ValidationError(fmt::format("test fraction must be in (0, 1), got {}", test_fraction));
  }
  std::unordered_set<std::string_view> ids;
  for (const auto& e : examples) {
    if (!ids.insert(e.entry_id).second) {
      throw DataError(fmt::format("duplicate entry id '{}' cannot be split", e.entry_id));
    }
  }
  auto by_class = indices_by_class(examples);
  for (const Emotion e : kEmotions) {
    if (by_class[index(e)].size() < 2) {
      throw DataError(fmt::format("cannot split: class {} has {} example(s), need at least 2",
                                  label_name(e), by_class[index(e)].size()));
    }
  }

  SeededRng rng(seed);
  std::vector<bool> in_test(examples.size(), false);
  for (auto& members : by_class) {
    rng.shuffle(std::span(members));
    const std::size_t k = stratified_test_size(members.size(), test_fraction);
    for (std::size_t j = 0; j < k; ++j) in_test[members[j]] = true;
  }

  SplitCorpus result;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    (in_test[i] ? result.test : result.train).push_back(examples[i]);
  }
  return result;
}

}  // namespace sessiz
