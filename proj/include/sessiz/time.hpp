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

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace sessiz {

/// UTC instant at second precision.
using Timestamp = std::chrono::sys_seconds;

/// Inclusive [start, end] interval of instants.
struct TimeWindow {
  Timestamp start;
  Timestamp end;

  /// Throws ValidationError when start > end.
  static TimeWindow make(Timestamp start, Timestamp end);

  bool contains(Timestamp t) const noexcept { return start <= t && t <= end; }
};

/// Parses ISO-8601 instants: `YYYY-MM-DD`, `YYYY-MM-DDTHH:MM[:SS[.fff]]` with an
/// optional `Z` or `+HH:MM` / `+HHMM` offset (`T` may also be a space). Values
/// without an offset are taken as UTC; fractional seconds are truncated.
std::optional<Timestamp> parse_iso8601(std::string_view text);

/// Parses with a strftime-style pattern (std::get_time directives), as UTC.
std::optional<Timestamp> parse_with_format(std::string_view text, const std::string& format);

/// `YYYY-MM-DDTHH:MM:SSZ`
std::string format_iso8601(Timestamp t);

/// `YYYY-MM` and `YYYY-MM-DD` bucket keys in UTC.
std::string month_key(Timestamp t);
std::string day_key(Timestamp t);

int year_of(Timestamp t);

/// A bare date given as a window end means "through the end of that day".
std::optional<Timestamp> parse_window_end(std::string_view text);

}  // namespace sessiz
