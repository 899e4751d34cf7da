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
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sessiz/aggregate.hpp"

namespace sessiz {

/// kUniform prints every percentage with one decimal ("0.0", "2.0");
/// kCompactZero prints cells that round to zero as "0" and leaves the rest as kUniform.
enum class PercentStyle { kUniform, kCompactZero };

std::string format_percent(std::uint64_t tenths, PercentStyle style = PercentStyle::kUniform);

// Plot data. Every writer is deterministic and every reader inverts its writer.

/// `emotion,count,percentage`, one row per emotion in code order.
void write_distribution_csv(std::ostream& out, const Distribution& rows,
                            PercentStyle style = PercentStyle::kUniform);
Distribution read_distribution_csv(std::istream& in);

/// `month,count,percentage`.
void write_monthly_csv(std::ostream& out, std::span<const MonthlyRow> rows,
                       PercentStyle style = PercentStyle::kUniform);
std::vector<MonthlyRow> read_monthly_csv(std::istream& in);

/// `bucket,happy,fear,sadness,disgust,surprise,anger`.
void write_series_csv(std::ostream& out, const EmotionSeries& series);
EmotionSeries read_series_csv(std::istream& in);

/// File variants; empty input -> ValidationError, write failure -> IoError.
void emit_plot_data(const EmotionSeries& series, const std::filesystem::path& path);
void emit_plot_data(const Distribution& rows, const std::filesystem::path& path,
                    PercentStyle style = PercentStyle::kUniform);

enum class ChartKind { kLineSeries, kBarDistribution };

struct ChartSpec {
  ChartKind kind = ChartKind::kBarDistribution;
  std::string title;
  std::string x_label;
  std::string y_label;
  std::filesystem::path data;  // a CSV written by emit_plot_data
};

/// Self-contained SVG: bars for a distribution, one polyline per emotion for a
/// series. Same spec and data give the same bytes. A missing or unparseable
/// data file -> DataError.
std::string render_chart(const ChartSpec& spec);
void render_chart(const ChartSpec& spec, const std::filesystem::path& out);

}  // namespace sessiz
