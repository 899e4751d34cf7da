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
#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "sessiz/error.hpp"
#include "test_support.hpp"

namespace sessiz {
namespace {

LoadResult load_csv(const std::string& text) {
  std::istringstream in(text);
  return load_posts(in, LoadOptions{});
}

Timestamp ts(const char* iso) { return *parse_iso8601(iso); }

std::string fmt_day(int d) { return "2022-02-" + std::string(d < 10 ? "0" : "") + std::to_string(d) + "T18:00:00Z"; }

RawPost post(std::string id, const char* when, std::string text = "x", std::string lang = "tr") {
  return RawPost{std::move(id), ts(when), std::move(text), std::move(lang)};
}

TEST(Ingest, EmptyFileYieldsNoPosts) {
  EXPECT_TRUE(load_csv("").posts.empty());
  EXPECT_TRUE(load_csv("id,created_at,text,lang\n").posts.empty());
}

TEST(Ingest, SingleRowMapsFieldsDirectly) {
  const auto r = load_csv("id,created_at,text,lang\n1,2022-05-03T10:00:00Z,sessiz istila,tr\n");
  ASSERT_EQ(r.posts.size(), 1u);
  EXPECT_EQ(r.posts[0], post("1", "2022-05-03T10:00:00Z", "sessiz istila", "tr"));
}

TEST(Ingest, ExtraColumnsAreDroppedAndOrderIsFree) {
  const auto r =
      load_csv("user_name,text,followers,lang,id,created_at\nalice,merhaba,12,TR,7,2022-01-01\n");
  ASSERT_EQ(r.posts.size(), 1u);
  EXPECT_EQ(r.posts[0], post("7", "2022-01-01T00:00:00Z", "merhaba", "tr"));
  std::ostringstream out;
  write_posts_jsonl(out, r.posts);
  EXPECT_EQ(out.str().find("alice"), std::string::npos);
  EXPECT_EQ(out.str(), "{\"id\":\"7\",\"created_at\":\"2022-01-01T00:00:00Z\",\"text\":\"merhaba\","
                       "\"lang\":\"tr\"}\n");
}

TEST(Ingest, MissingRequiredColumnIsDataError) {
  EXPECT_THROW(load_csv("id,created_at,text\n1,2022-01-01,x\n"), DataError);
}

TEST(Ingest, StrayBadRecordsAreCollectedWithLineNumbers) {
  std::string text = "id,created_at,text,lang\n";
  for (int i = 0; i < 19; ++i) text += std::to_string(i) + ",2022-01-01,ok,tr\n";
  text += "bad,not-a-date,x,tr\n";
  const auto r = load_csv(text);
  EXPECT_EQ(r.posts.size(), 19u);
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].line, 21u);
}

TEST(Ingest, MoreThanTenPercentMalformedAborts) {
  std::string text = "id,created_at,text,lang\n";
  for (int i = 0; i < 8; ++i) text += std::to_string(i) + ",2022-01-01,ok,tr\n";
  text += "a,never,x,tr\nb,,x,tr\n";
  EXPECT_THROW(load_csv(text), DataError);
}

TEST(Ingest, UnreadableFileIsIoError) {
  EXPECT_THROW(load_posts("/nonexistent/posts.csv", LoadOptions{}), IoError);
}

TEST(Ingest, JsonlInput) {
  std::istringstream in(
      "{\"id\": 5, \"created_at\": \"2022-05-03T10:00:00Z\", \"text\": \"a\", \"lang\": \"tr\", "
      "\"user\": \"x\"}\n\n{\"id\": \"6\", \"created_at\": \"2022-05-04\", \"text\": \"b\", "
      "\"lang\": \"en\"}\n");
  LoadOptions o;
  o.format = InputFormat::kJsonl;
  const auto r = load_posts(in, o);
  ASSERT_EQ(r.posts.size(), 2u);
  EXPECT_EQ(r.posts[0].id, "5");
  EXPECT_EQ(r.posts[1].lang, "en");
}

TEST(Ingest, TimeFormatOverride) {
  std::istringstream in("id,created_at,text,lang\n1,03/05/2022 10:00,x,tr\n");
  LoadOptions o;
  o.time_format = "%d/%m/%Y %H:%M";
  const auto r = load_posts(in, o);
  ASSERT_EQ(r.posts.size(), 1u);
  EXPECT_EQ(r.posts[0].created_at, ts("2022-05-03T10:00:00Z"));
}

TEST(Ingest, WindowBoundaryIsExclusiveBeforeStart) {
  const std::vector<RawPost> posts{post("a", "2021-05-31T23:59:59Z"),
                                   post("b", "2021-06-01T00:00:00Z"),
                                   post("c", "2022-12-31T23:59:59Z"),
                                   post("d", "2023-01-01T00:00:00Z")};
  const auto w = TimeWindow::make(ts("2021-06-01"), *parse_window_end("2022-12-31"));
  const auto kept = filter_window(posts, w);
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].id, "b");
  EXPECT_EQ(kept[1].id, "c");
}

TEST(Ingest, WindowMatchesPerRecordComparison) {
  std::vector<RawPost> posts;
  for (int d = 1; d <= 28; ++d) {
    posts.push_back(post(std::to_string(d), fmt_day(d).c_str()));
  }
  const auto w = TimeWindow::make(ts("2022-02-10T12:00:00Z"), ts("2022-02-20T00:00:00Z"));
  std::vector<RawPost> expected;
  for (const auto& p : posts) {
    if (w.start <= p.created_at && p.created_at <= w.end) expected.push_back(p);
  }
  EXPECT_EQ(filter_window(posts, w), expected);
}

TEST(Ingest, IdentityWindowKeepsEverything) {
  const std::vector<RawPost> posts{post("a", "2022-01-01"), post("b", "2022-03-01")};
  EXPECT_EQ(filter_window(posts, TimeWindow::make(ts("2021-01-01"), ts("2023-01-01"))), posts);
}

TEST(Ingest, LanguageFilterIgnoresCase) {
  const std::vector<RawPost> posts{post("1", "2022-01-01", "x", "tr"),
                                   post("2", "2022-01-01", "x", "en"),
                                   post("3", "2022-01-01", "x", "tr")};
  EXPECT_EQ(filter_language(posts, "tr").size(), 2u);
  EXPECT_EQ(filter_language(posts, "TR").size(), 2u);
  EXPECT_THROW(filter_language(posts, ""), ValidationError);
}

TEST(Ingest, DuplicateTextsSurvive) {
  const std::vector<RawPost> posts{post("1", "2022-01-01", "aynı"), post("2", "2022-01-02", "aynı"),
                                   post("3", "2022-01-03", "aynı")};
  const auto kept = filter_language(filter_window(posts, TimeWindow::make(ts("2021-01-01"),
                                                                          ts("2023-01-01"))),
                                    "tr");
  EXPECT_EQ(std::count_if(kept.begin(), kept.end(), [](const RawPost& p) { return p.text == "aynı"; }),
            3);
}

TEST(Ingest, CorpusOfFullSizeLoadsEveryRow) {
  constexpr int kRows = 47024;
  std::string text = "id,created_at,text,lang\n";
  text.reserve(kRows * 60);
  for (int i = 0; i < kRows; ++i) {
    text += std::to_string(i) + ",2022-05-" + std::to_string(10 + i % 19) +
            "T10:00:00Z,\"sessiz istila, " + std::to_string(i % 97) + "\",tr\n";
  }
  const auto r = load_csv(text);
  EXPECT_EQ(r.posts.size(), static_cast<std::size_t>(kRows));
  EXPECT_TRUE(r.errors.empty());
}

TEST(Ingest, OutputIsSubsetOfInput) {
  const auto r = load_posts(testing::data_dir() / "synthetic" / "posts.csv", LoadOptions{});
  const auto w = TimeWindow::make(ts("2021-06-01"), *parse_window_end("2022-12-31"));
  const auto kept = filter_language(filter_window(r.posts, w), "tr");
  std::map<std::string, int> remaining;
  for (const auto& p : r.posts) ++remaining[p.id + '\x1f' + p.text];
  for (const auto& p : kept) EXPECT_GE(--remaining[p.id + '\x1f' + p.text], 0);
  EXPECT_LT(kept.size(), r.posts.size());
}

}  // namespace
}  // namespace sessiz
