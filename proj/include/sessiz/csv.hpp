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
#include <istream>
#include <optional>
#include <stdexcept>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace sessiz::csv {

/// One parsed record and the 1-based physical line it started on.
struct Record {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

/// Thrown for quoting errors; carries the line where the record started.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// RFC-4180 reader: comma separated, double-quote quoting with `""` escapes,
/// quoted fields may span lines, CRLF or LF line ends. A leading UTF-8 BOM is
/// skipped. Blank lines are ignored.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  /// Next record, or nullopt at end of input. Throws ParseError on an
  /// unterminated quote or stray characters after a closing quote; the reader
  /// resynchronises at the next line so callers may continue.
  std::optional<Record> next();

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  bool first_ = true;
};

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// Maps header names to column indices; names compare exactly.
class Header {
 public:
  Header() = default;
  explicit Header(std::vector<std::string> names);

  /// ASCII case-insensitive; the first matching column wins.
  std::optional<std::size_t> find(std::string_view name) const;
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
};

}  // namespace sessiz::csv
