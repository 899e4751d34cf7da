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

#include "sessiz/time.hpp"

#include <cctype>
#include <ctime>
#include <iomanip>
#include <locale>
#include <sstream>

#include <fmt/format.h>

#include "sessiz/error.hpp"

namespace sessiz {

namespace {

using namespace std::chrono;

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  bool done() const { return pos_ == s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  // Exactly `width` ASCII digits.
  std::optional<int> digits(int width) {
    if (pos_ + static_cast<std::size_t>(width) > s_.size()) return std::nullopt;
    int value = 0;
    for (int i = 0; i < width; ++i) {
      const char c = s_[pos_ + static_cast<std::size_t>(i)];
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
      value = value * 10 + (c - '0');
    }
    pos_ += static_cast<std::size_t>(width);
    return value;
  }

  void skip_digits() {
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::optional<sys_days> make_date(int y, int m, int d) {
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return sys_days{ymd};
}

bool is_date_only(std::string_view text) {
  return text.size() == 10 && text.find_first_of("T :") == std::string_view::npos;
}

}  // namespace

TimeWindow TimeWindow::make(Timestamp start, Timestamp end) {
  if (start > end) {
    throw ValidationError("time window start " + format_iso8601(start) + " is after end " +
                          format_iso8601(end));
  }
  return TimeWindow{start, end};
}

std::optional<Timestamp> parse_iso8601(std::string_view text) {
  Cursor c(text);
  const auto y = c.digits(4);
  if (!y || !c.accept('-')) return std::nullopt;
  const auto mo = c.digits(2);
  if (!mo || !c.accept('-')) return std::nullopt;
  const auto d = c.digits(2);
  if (!d) return std::nullopt;
  const auto date = make_date(*y, *mo, *d);
  if (!date) return std::nullopt;
  if (c.done()) return Timestamp{*date};

  if (!c.accept('T') && !c.accept(' ')) return std::nullopt;
  const auto hh = c.digits(2);
  if (!hh || !c.accept(':')) return std::nullopt;
  const auto mm = c.digits(2);
  if (!mm) return std::nullopt;
  int ss = 0;
  if (c.accept(':')) {
    const auto s = c.digits(2);
    if (!s) return std::nullopt;
    ss = *s;
    if (c.accept('.') || c.accept(',')) c.skip_digits();
  }
  if (*hh > 23 || *mm > 59 || ss > 59) return std::nullopt;

  seconds offset{0};
  if (c.accept('Z') || c.accept('z')) {
    // UTC
  } else if (c.peek() == '+' || c.peek() == '-') {
    const int sign = c.peek() == '-' ? -1 : 1;
    c.accept(c.peek());
    const auto oh = c.digits(2);
    if (!oh) return std::nullopt;
    c.accept(':');
    const auto om = c.digits(2);
    if (!om || *oh > 23 || *om > 59) return std::nullopt;
    offset = sign * (hours{*oh} + minutes{*om});
  }
  if (!c.done()) return std::nullopt;

  return Timestamp{*date} + hours{*hh} + minutes{*mm} + seconds{ss} - offset;
}

std::optional<Timestamp> parse_with_format(std::string_view text, const std::string& format) {
  std::tm tm{};
  std::istringstream in{std::string(text)};
  in.imbue(std::locale::classic());
  in >> std::get_time(&tm, format.c_str());
  if (in.fail()) return std::nullopt;
  in >> std::ws;
  if (!in.eof()) return std::nullopt;
  const auto date = make_date(tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday);
  if (!date || tm.tm_hour > 23 || tm.tm_min > 59 || tm.tm_sec > 59) return std::nullopt;
  return Timestamp{*date} + hours{tm.tm_hour} + minutes{tm.tm_min} + seconds{tm.tm_sec};
}

std::string format_iso8601(Timestamp t) {
  const auto day_start = floor<days>(t);
  const year_month_day ymd{day_start};
  const hh_mm_ss hms{t - day_start};
  return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                     hms.hours().count(), hms.minutes().count(), hms.seconds().count());
}

std::string month_key(Timestamp t) {
  const year_month_day ymd{floor<days>(t)};
  return fmt::format("{:04d}-{:02d}", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()));
}

std::string day_key(Timestamp t) {
  const year_month_day ymd{floor<days>(t)};
  return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
}

int year_of(Timestamp t) {
  return static_cast<int>(year_month_day{floor<days>(t)}.year());
}

std::optional<Timestamp> parse_window_end(std::string_view text) {
  auto t = parse_iso8601(text);
  if (t && is_date_only(text)) *t += days{1} - seconds{1};
  return t;
}

}  // namespace sessiz
