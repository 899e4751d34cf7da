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

#include "sessiz/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "sessiz/csv.hpp"
#include "sessiz/error.hpp"

namespace sessiz {

namespace {

constexpr std::array<std::string_view, kNumEmotions> kColors = {
    "#f2c14e", "#6a4c93", "#1982c4", "#8ac926", "#ff924c", "#d62828"};

constexpr double kWidth = 800;
constexpr double kHeight = 480;
constexpr double kLeft = 80;
constexpr double kRight = 140;
constexpr double kTop = 50;
constexpr double kBottom = 80;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;

std::uint64_t parse_count(std::string_view s, std::size_t line) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw DataError(fmt::format("line {}: bad count '{}'", line, s));
  }
  return v;
}

// "43.6" -> 436, "0" -> 0, "2" -> 20.
std::uint64_t parse_tenths(std::string_view s, std::size_t line) {
  const auto dot = s.find('.');
  if (dot == std::string_view::npos) return parse_count(s, line) * 10;
  const auto frac = s.substr(dot + 1);
  if (frac.size() != 1 || !std::isdigit(static_cast<unsigned char>(frac[0]))) {
    throw DataError(fmt::format("line {}: bad percentage '{}'", line, s));
  }
  return parse_count(s.substr(0, dot), line) * 10 + static_cast<std::uint64_t>(frac[0] - '0');
}

std::vector<csv::Record> read_table(std::istream& in, const std::vector<std::string>& header) {
  std::vector<csv::Record> rows;
  try {
    csv::Reader reader(in);
    const auto head = reader.next();
    if (!head || head->fields != header) {
      throw DataError(fmt::format("expected header {}", fmt::join(header, ",")));
    }
    while (auto rec = reader.next()) {
      if (rec->fields.size() != header.size()) {
        throw DataError(fmt::format("line {}: expected {} fields", rec->line, header.size()));
      }
      rows.push_back(std::move(*rec));
    }
  } catch (const csv::ParseError& e) {
    throw DataError(fmt::format("line {}: {}", e.line(), e.what()));
  }
  return rows;
}

std::vector<std::string> series_header() {
  std::vector<std::string> h{"bucket"};
  for (const Emotion e : kEmotions) h.emplace_back(label_key(e));
  return h;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// Smallest 1/2/5 x 10^k step giving at most five intervals above `max`.
double nice_axis_max(double max, double& step) {
  if (max <= 0) {
    step = 1;
    return 5;
  }
  const double raw = max / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  step = mag;
  for (const double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) {
      step = std::max(1.0, m * mag);
      break;
    }
  }
  return step * std::ceil(max / step);
}

std::string svg_open(const ChartSpec& spec) {
  std::string s = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{1:.0f}\" "
      "viewBox=\"0 0 {0:.0f} {1:.0f}\" font-family=\"sans-serif\" font-size=\"12\">\n",
      kWidth, kHeight);
  s += fmt::format("<rect width=\"{:.0f}\" height=\"{:.0f}\" fill=\"#ffffff\"/>\n", kWidth, kHeight);
  s += fmt::format("<text class=\"title\" x=\"{:.2f}\" y=\"28\" text-anchor=\"middle\" "
                   "font-size=\"16\">{}</text>\n",
                   kWidth / 2, xml_escape(spec.title));
  s += fmt::format("<text class=\"x-label\" x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n",
                   kLeft + kPlotW / 2, kHeight - 20, xml_escape(spec.x_label));
  s += fmt::format("<text class=\"y-label\" x=\"20\" y=\"{0:.2f}\" text-anchor=\"middle\" "
                   "transform=\"rotate(-90 20 {0:.2f})\">{1}</text>\n",
                   kTop + kPlotH / 2, xml_escape(spec.y_label));
  return s;
}

std::string y_axis(double axis_max, double step) {
  std::string s;
  for (double v = 0; v <= axis_max + 1e-9; v += step) {
    const double y = kTop + kPlotH - v / axis_max * kPlotH;
    s += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" "
                     "stroke=\"#dddddd\"/>\n",
                     kLeft, y, kLeft + kPlotW);
    s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{:.0f}</text>\n",
                     kLeft - 6, y + 4, v);
  }
  s += fmt::format(
      "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"#333333\"/>\n",
      kLeft, kTop, kTop + kPlotH);
  s += fmt::format(
      "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"#333333\"/>\n",
      kLeft, kTop + kPlotH, kLeft + kPlotW);
  return s;
}

std::string render_bars(const ChartSpec& spec, const Distribution& rows) {
  std::uint64_t max = 0;
  for (const auto& r : rows) max = std::max(max, r.count);
  double step = 1;
  const double axis_max = nice_axis_max(static_cast<double>(max), step);

  std::string s = svg_open(spec) + y_axis(axis_max, step);
  const double slot = kPlotW / kNumEmotions;
  const double bar_w = slot * 0.7;
  for (const auto& r : rows) {
    const auto i = index(r.emotion);
    const double h = static_cast<double>(r.count) / axis_max * kPlotH;
    const double x = kLeft + slot * static_cast<double>(i) + (slot - bar_w) / 2;
    const double y = kTop + kPlotH - h;
    s += fmt::format("<rect class=\"bar\" data-emotion=\"{}\" x=\"{:.2f}\" y=\"{:.2f}\" "
                     "width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\"/>\n",
                     label_key(r.emotion), x, y, bar_w, h, kColors[i]);
    s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}%</text>\n",
                     x + bar_w / 2, y - 5, format_percent(r.tenths));
    s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n",
                     x + bar_w / 2, kTop + kPlotH + 18, label_name(r.emotion));
  }
  return s + "</svg>\n";
}

std::string render_lines(const ChartSpec& spec, const EmotionSeries& series) {
  if (series.buckets.empty()) throw DataError("series has no buckets to plot");
  std::uint64_t max = 0;
  for (const auto& b : series.buckets) {
    for (const auto c : b.counts) max = std::max(max, c);
  }
  double step = 1;
  const double axis_max = nice_axis_max(static_cast<double>(max), step);
  const std::size_t n = series.buckets.size();
  const auto x_at = [&](std::size_t i) {
    return n == 1 ? kLeft + kPlotW / 2
                  : kLeft + kPlotW * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  const auto y_at = [&](std::uint64_t v) {
    return kTop + kPlotH - static_cast<double>(v) / axis_max * kPlotH;
  };

  std::string s = svg_open(spec) + y_axis(axis_max, step);
  const std::size_t label_every = std::max<std::size_t>(1, (n + 11) / 12);
  for (std::size_t i = 0; i < n; i += label_every) {
    s += fmt::format("<text class=\"x-tick\" x=\"{0:.2f}\" y=\"{1:.2f}\" text-anchor=\"end\" "
                     "transform=\"rotate(-35 {0:.2f} {1:.2f})\">{2}</text>\n",
                     x_at(i), kTop + kPlotH + 16, series.buckets[i].key);
  }
  for (const Emotion e : kEmotions) {
    const auto c = index(e);
    std::string points;
    for (std::size_t i = 0; i < n; ++i) {
      if (i) points.push_back(' ');
      points += fmt::format("{:.2f},{:.2f}", x_at(i), y_at(series.buckets[i].counts[c]));
    }
    s += fmt::format("<polyline class=\"series\" data-emotion=\"{}\" points=\"{}\" fill=\"none\" "
                     "stroke=\"{}\" stroke-width=\"1.5\"/>\n",
                     label_key(e), points, kColors[c]);
    for (std::size_t i = 0; i < n; ++i) {
      s += fmt::format("<circle class=\"point\" data-emotion=\"{}\" cx=\"{:.2f}\" cy=\"{:.2f}\" "
                       "r=\"2\" fill=\"{}\"/>\n",
                       label_key(e), x_at(i), y_at(series.buckets[i].counts[c]), kColors[c]);
    }
    const double ly = kTop + 10 + 18 * static_cast<double>(c);
    s += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"12\" height=\"12\" fill=\"{}\"/>\n",
                     kLeft + kPlotW + 16, ly - 10, kColors[c]);
    s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n", kLeft + kPlotW + 34, ly,
                     label_name(e));
  }
  return s + "</svg>\n";
}

template <typename Fn>
auto read_file(const std::filesystem::path& path, Fn&& parse) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("chart data " + path.string() + " does not exist");
  try {
    return parse(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw IoError("cannot write " + path.string());
}

}  // namespace

std::string format_percent(std::uint64_t tenths, PercentStyle style) {
  if (style == PercentStyle::kCompactZero && tenths == 0) return "0";
  return fmt::format("{}.{}", tenths / 10, tenths % 10);
}

void write_distribution_csv(std::ostream& out, const Distribution& rows, PercentStyle style) {
  csv::write_row(out, {"emotion", "count", "percentage"});
  for (const auto& r : rows) {
    csv::write_row(out, {std::string(label_name(r.emotion)), std::to_string(r.count),
                         format_percent(r.tenths, style)});
  }
}

Distribution read_distribution_csv(std::istream& in) {
  const auto rows = read_table(in, {"emotion", "count", "percentage"});
  if (rows.size() != kNumEmotions) throw DataError("distribution must have six rows");
  Distribution out{};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& f = rows[i].fields;
    const auto e = parse_emotion(f[0]);
    if (!e || index(*e) != i) {
      throw DataError(fmt::format("line {}: expected {}", rows[i].line,
                                  label_name(static_cast<Emotion>(i))));
    }
    out[i] = DistributionRow{*e, parse_count(f[1], rows[i].line), parse_tenths(f[2], rows[i].line)};
  }
  return out;
}

void write_monthly_csv(std::ostream& out, std::span<const MonthlyRow> rows, PercentStyle style) {
  csv::write_row(out, {"month", "count", "percentage"});
  for (const auto& r : rows) {
    csv::write_row(out, {r.month, std::to_string(r.count), format_percent(r.tenths, style)});
  }
}

std::vector<MonthlyRow> read_monthly_csv(std::istream& in) {
  std::vector<MonthlyRow> out;
  for (const auto& rec : read_table(in, {"month", "count", "percentage"})) {
    const auto& f = rec.fields;
    out.push_back({f[0], parse_count(f[1], rec.line), parse_tenths(f[2], rec.line)});
  }
  return out;
}

void write_series_csv(std::ostream& out, const EmotionSeries& series) {
  csv::write_row(out, series_header());
  for (const auto& b : series.buckets) {
    std::vector<std::string> row{b.key};
    for (const auto c : b.counts) row.push_back(std::to_string(c));
    csv::write_row(out, row);
  }
}

EmotionSeries read_series_csv(std::istream& in) {
  EmotionSeries series;
  const auto rows = read_table(in, series_header());
  for (const auto& rec : rows) {
    SeriesBucket b{rec.fields[0], {}};
    for (std::size_t i = 0; i < kNumEmotions; ++i) {
      b.counts[i] = parse_count(rec.fields[i + 1], rec.line);
    }
    if (!series.buckets.empty() && !(series.buckets.back().key < b.key)) {
      throw DataError(fmt::format("line {}: bucket keys must increase", rec.line));
    }
    series.buckets.push_back(std::move(b));
  }
  if (!series.buckets.empty() && series.buckets.front().key.size() == 7) {
    series.resolution = Resolution::kMonth;
  }
  return series;
}

void emit_plot_data(const EmotionSeries& series, const std::filesystem::path& path) {
  if (series.buckets.empty()) throw ValidationError("refusing to emit an empty series");
  std::ostringstream out;
  write_series_csv(out, series);
  write_file(path, out.str());
}

void emit_plot_data(const Distribution& rows, const std::filesystem::path& path,
                    PercentStyle style) {
  std::uint64_t total = 0;
  for (const auto& r : rows) total += r.count;
  if (total == 0) throw ValidationError("refusing to emit an empty distribution");
  std::ostringstream out;
  write_distribution_csv(out, rows, style);
  write_file(path, out.str());
}

std::string render_chart(const ChartSpec& spec) {
  if (spec.kind == ChartKind::kBarDistribution) {
    return render_bars(spec, read_file(spec.data, read_distribution_csv));
  }
  return render_lines(spec, read_file(spec.data, read_series_csv));
}

void render_chart(const ChartSpec& spec, const std::filesystem::path& out) {
  write_file(out, render_chart(spec));
}

}  // namespace sessiz
