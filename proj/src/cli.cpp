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

#include "sessiz/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "sessiz/corpus.hpp"
#include "sessiz/error.hpp"
#include "sessiz/eval.hpp"
#include "sessiz/normalize.hpp"
#include "sessiz/version.hpp"

namespace sessiz::cli {

namespace {

// Tags errors with the stage that raised them without changing their type.
template <typename Fn>
void in_stage(std::string_view stage, Fn&& fn) {
  try {
    fn();
  } catch (const ValidationError& e) {
    throw ValidationError(fmt::format("{}: {}", stage, e.what()));
  } catch (const IoError& e) {
    throw IoError(fmt::format("{}: {}", stage, e.what()));
  } catch (const DataError& e) {
    throw DataError(fmt::format("{}: {}", stage, e.what()));
  } catch (const BackendError& e) {
    throw BackendError(fmt::format("{}: {}", stage, e.what()));
  }
}

void require_path(const fs::path& p, std::string_view flag) {
  if (p.empty()) throw ValidationError(fmt::format("missing required option {}", flag));
}

std::uint64_t require_seed(const std::optional<std::uint64_t>& seed) {
  if (!seed) throw ValidationError("missing required option --seed");
  return *seed;
}

void validate_fraction(double f) {
  if (!(f > 0.0 && f < 1.0)) {
    throw ValidationError(fmt::format("--test-fraction must lie in (0, 1), got {}", f));
  }
}

std::ifstream open_in(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open {}", p.string()));
  return in;
}

void write_text(const fs::path& p, const std::string& content) {
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << content;
  out.close();
  if (!out) throw IoError(fmt::format("cannot write {}", p.string()));
}

template <typename Writer>
void write_with(const fs::path& p, Writer&& writer) {
  std::ostringstream buf;
  writer(buf);
  write_text(p, buf.str());
}

Timestamp parse_start(const std::string& text, std::string_view flag) {
  const auto t = parse_iso8601(text);
  if (!t) throw ValidationError(fmt::format("{}: '{}' is not an ISO-8601 date or time", flag, text));
  return *t;
}

Timestamp parse_end(const std::string& text, std::string_view flag) {
  const auto t = parse_window_end(text);
  if (!t) throw ValidationError(fmt::format("{}: '{}' is not an ISO-8601 date or time", flag, text));
  return *t;
}

std::optional<TimeWindow> aggregate_window(const AggregateOptions& o,
                                           std::span<const ScoredPost> preds) {
  if (!o.from && !o.to) return std::nullopt;
  std::optional<Timestamp> lo;
  std::optional<Timestamp> hi;
  for (const auto& p : preds) {
    if (!p.created_at) continue;
    if (!lo || *p.created_at < *lo) lo = p.created_at;
    if (!hi || *p.created_at > *hi) hi = p.created_at;
  }
  const Timestamp start = o.from ? parse_start(*o.from, "--from") : lo.value_or(Timestamp{});
  const Timestamp end = o.to ? parse_end(*o.to, "--to") : hi.value_or(start);
  return TimeWindow::make(start, end);
}

std::vector<ScoredPost> windowed(std::span<const ScoredPost> preds,
                                 const std::optional<TimeWindow>& window) {
  std::vector<ScoredPost> out;
  for (const auto& p : preds) {
    if (window) {
      if (!p.created_at) {
        throw DataError(fmt::format("prediction '{}' has no created_at; cannot window", p.id));
      }
      if (!window->contains(*p.created_at)) continue;
    }
    out.push_back(p);
  }
  return out;
}

PredictInput parse_predict_input(std::string_view name) {
  if (name == "normalized") return PredictInput::kNormalized;
  if (name == "corpus") return PredictInput::kCorpus;
  throw ValidationError(fmt::format("unknown input format '{}' (expected normalized or corpus)", name));
}

PercentStyle style_of(bool compact_zero) { return compact_zero ? PercentStyle::kCompactZero : PercentStyle::kUniform; }

std::vector<fs::path> distribution_files(const fs::path& dir) {
  std::vector<fs::path> out;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    const auto name = entry.path().filename().string();
    if (entry.is_regular_file() && name.starts_with("distribution") && name.ends_with(".csv")) {
      out.push_back(entry.path());
    }
  }
  if (ec) throw IoError(fmt::format("cannot list {}: {}", dir.string(), ec.message()));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Stages

void run_ingest(const IngestOptions& o) {
  require_path(o.input, "--input");
  require_path(o.output, "--output");
  if (o.lang.empty()) throw ValidationError("--lang must not be empty");
  const auto window = TimeWindow::make(parse_start(o.from, "--from"), parse_end(o.to, "--to"));

  LoadOptions load;
  load.format = o.format;
  load.time_format = o.time_format;
  const auto loaded = load_posts(o.input, load);
  for (const auto& e : loaded.errors) {
    fmt::print(stderr, "ingest: warning: line {}: {}\n", e.line, e.message);
  }
  const auto in_window = filter_window(loaded.posts, window);
  const auto posts = filter_language(in_window, o.lang);
  write_with(o.output, [&](std::ostream& out) { write_posts_jsonl(out, posts); });
}

void run_normalize(const NormalizeOptions& o) {
  require_path(o.input, "--input");
  require_path(o.lexicon, "--lexicon");
  require_path(o.output, "--output");
  if (!fs::is_regular_file(o.lexicon)) {
    throw ValidationError(fmt::format("--lexicon: no such file {}", o.lexicon.string()));
  }
  const auto lexicon = EmojiLexicon::load(o.lexicon);

  LoadOptions load;
  load.format = InputFormat::kJsonl;
  load.max_error_fraction = 0.0;
  const auto loaded = load_posts(o.input, load);
  const auto posts = normalize_posts(loaded.posts, lexicon, nullptr, o.threads);
  write_with(o.output, [&](std::ostream& out) { write_normalized_jsonl(out, posts); });
}

void run_balance(const BalanceOptions& o) {
  require_path(o.input, "--input");
  require_path(o.output, "--output");
  const auto seed = require_seed(o.seed);
  const auto columns = o.column_map.empty() ? ColumnMap{} : ColumnMap::parse(o.column_map);
  const auto corpus = load_corpus(o.input, columns);
  const auto validated = filter_validated(corpus);
  const auto lowered = lowercase_texts(validated);
  const auto balanced = balance(lowered, seed);
  write_with(o.output, [&](std::ostream& out) { write_corpus(out, balanced); });
}

void run_split(const SplitOptions& o) {
  require_path(o.input, "--input");
  require_path(o.train, "--train");
  require_path(o.test, "--test");
  validate_fraction(o.test_fraction);
  const auto seed = require_seed(o.seed);
  const auto corpus = load_corpus(o.input);
  const auto parts = split(corpus, o.test_fraction, seed);
  write_with(o.train, [&](std::ostream& out) { write_corpus(out, parts.train); });
  write_with(o.test, [&](std::ostream& out) { write_corpus(out, parts.test); });
}

void run_predict(const PredictOptions& o) {
  require_path(o.input, "--input");
  require_path(o.model, "--model");
  require_path(o.output, "--output");
  const double threshold = o.argmax ? std::numeric_limits<double>::denorm_min() : o.threshold;
  validate_threshold(threshold);

  std::vector<ScoringInput> inputs;
  if (o.input_format == PredictInput::kNormalized) {
    auto in = open_in(o.input);
    inputs = scoring_inputs(read_normalized_jsonl(in));
  } else {
    for (auto& e : load_corpus(o.input)) {
      inputs.push_back(ScoringInput{std::move(e.entry_id), std::nullopt, std::move(e.text)});
    }
  }

  const auto backend = load_backend(o.backend, o.model);
  const auto result = batch_predict(inputs, *backend, threshold, o.skip_errors);
  for (const auto& e : result.errors) {
    fmt::print(stderr, "predict: warning: skipped '{}': {}\n", e.id, e.message);
  }
  write_with(o.output, [&](std::ostream& out) { write_predictions(out, result.predictions); });
}

void run_evaluate(const EvaluateOptions& o) {
  require_path(o.truth, "--truth");
  require_path(o.predictions, "--pred");
  require_path(o.output, "--out");
  const auto truths = load_corpus(o.truth);
  auto in = open_in(o.predictions);
  const auto preds = read_predictions(in);
  const auto report = make_report(confusion_from_predictions(truths, preds));
  const bool csv = o.output.extension() == ".csv";
  write_text(o.output, csv ? render_report_csv(report) : render_report_json(report));
}

void run_aggregate(const AggregateOptions& o) {
  require_path(o.predictions, "--pred");
  require_path(o.output_dir, "--out");
  auto in = open_in(o.predictions);
  const auto all = read_predictions(in);
  const auto window = aggregate_window(o, all);
  const auto preds = windowed(all, window);
  const auto style = style_of(o.compact_zero);
  const auto& dir = o.output_dir;

  const auto counts = count_emotions(preds);
  write_with(dir / "volume.csv", [&](std::ostream& out) {
    out << "classified,ambiguous,total\n"
        << counts.classified_total() << ',' << counts.ambiguous << ','
        << counts.classified_total() + counts.ambiguous << '\n';
  });
  write_with(dir / "distribution.csv",
             [&](std::ostream& out) { write_distribution_csv(out, distribution(counts), style); });
  for (const int year : o.years) {
    const auto rows = yearly_distribution(preds, year);
    write_with(dir / fmt::format("distribution_{}.csv", year),
               [&](std::ostream& out) { write_distribution_csv(out, rows, style); });
  }
  const auto monthly = monthly_volume(preds, window);
  write_with(dir / "monthly.csv",
             [&](std::ostream& out) { write_monthly_csv(out, monthly, style); });
  const auto series = emotion_series(preds, o.resolution);
  write_with(dir / "series.csv", [&](std::ostream& out) { write_series_csv(out, series); });
}

void run_report(const ReportOptions& o) {
  require_path(o.input_dir, "--from");
  require_path(o.charts_dir, "--charts");
  if (!fs::is_directory(o.input_dir)) {
    throw IoError(fmt::format("{} is not a directory", o.input_dir.string()));
  }
  std::error_code ec;
  fs::create_directories(o.charts_dir, ec);
  const auto style = style_of(o.compact_zero);
  std::size_t charts = 0;

  for (const auto& path : distribution_files(o.input_dir)) {
    auto in = open_in(path);
    const auto rows = read_distribution_csv(in);
    const auto stem = path.stem().string();
    const auto data = o.charts_dir / (stem + ".csv");
    emit_plot_data(rows, data, style);
    const auto year = stem.size() > 13 ? stem.substr(13) : std::string();
    ChartSpec spec{ChartKind::kBarDistribution,
                   year.empty() ? "Emotion distribution" : "Emotion distribution " + year,
                   "Emotion", "Posts", data};
    render_chart(spec, o.charts_dir / (stem + ".svg"));
    ++charts;
  }

  const auto series_path = o.input_dir / "series.csv";
  if (fs::exists(series_path)) {
    auto in = open_in(series_path);
    const auto series = read_series_csv(in);
    if (!series.buckets.empty()) {
      const auto data = o.charts_dir / "series.csv";
      emit_plot_data(series, data);
      const bool daily = series.resolution == Resolution::kDay;
      ChartSpec spec{ChartKind::kLineSeries,
                     daily ? "Emotional map by day" : "Emotional map by month",
                     daily ? "Day" : "Month", "Posts", data};
      render_chart(spec, o.charts_dir / "series.svg");
      ++charts;
    }
  }
  if (charts == 0) {
    throw DataError(fmt::format("no aggregate files found in {}", o.input_dir.string()));
  }
}

void run_pipeline(const PipelineOptions& o) {
  require_path(o.output_dir, "--out");
  const fs::path& dir = o.output_dir;

  IngestOptions ingest = o.ingest;
  ingest.output = dir / "posts.jsonl";
  in_stage("ingest", [&] { run_ingest(ingest); });

  in_stage("normalize", [&] {
    run_normalize({ingest.output, o.lexicon, dir / "normalized.jsonl", o.threads});
  });

  PredictOptions predict;
  predict.input = dir / "normalized.jsonl";
  predict.model = o.model;
  predict.backend = o.backend;
  predict.threshold = o.threshold;
  predict.skip_errors = o.skip_errors;
  predict.output = dir / "predictions.csv";
  in_stage("predict", [&] { run_predict(predict); });

  AggregateOptions aggregate;
  aggregate.predictions = predict.output;
  aggregate.resolution = o.resolution;
  aggregate.from = ingest.from;
  aggregate.to = ingest.to;
  aggregate.compact_zero = o.compact_zero;
  aggregate.output_dir = dir / "aggregates";
  in_stage("aggregate", [&] {
    auto in = open_in(predict.output);
    aggregate.years = years_present(read_predictions(in));
    run_aggregate(aggregate);
  });

  in_stage("report", [&] { run_report({aggregate.output_dir, dir / "charts", o.compact_zero}); });

  if (!o.corpus) return;
  const fs::path cdir = dir / "corpus";
  in_stage("corpus balance", [&] {
    run_balance({*o.corpus, o.column_map, o.seed, cdir / "balanced.csv"});
  });
  in_stage("corpus split", [&] {
    run_split({cdir / "balanced.csv", o.test_fraction, o.seed, cdir / "train.csv",
               cdir / "test.csv"});
  });
  PredictOptions test_predict = predict;
  test_predict.input = cdir / "test.csv";
  test_predict.input_format = PredictInput::kCorpus;
  test_predict.argmax = true;
  test_predict.output = cdir / "test_predictions.csv";
  in_stage("predict", [&] { run_predict(test_predict); });
  in_stage("evaluate", [&] {
    run_evaluate({cdir / "test.csv", test_predict.output, cdir / "evaluation.json"});
  });
}

// ---------------------------------------------------------------------------
// Command line

int exit_code_for_current_exception(std::ostream& err, std::string_view stage) {
  const auto report = [&](std::string_view what) {
    err << "sessiz " << stage << ": error: " << what << '\n';
  };
  try {
    throw;
  } catch (const ValidationError& e) {
    report(e.what());
    return kExitValidation;
  } catch (const DataError& e) {
    report(e.what());
    return kExitData;
  } catch (const BackendError& e) {
    report(e.what());
    return kExitBackend;
  } catch (const std::exception& e) {
    report(e.what());
    return kExitData;
  }
}

namespace {

using Settings = std::map<std::string, std::string>;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// `key = value` per line; blank lines and lines starting with '#' are skipped.
Settings read_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot read config file {}", path.string()));
  Settings settings;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(fmt::format("{}:{}: expected key = value", path.string(), n));
    }
    auto key = trim(std::string_view(text).substr(0, eq));
    auto value = trim(std::string_view(text).substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    std::replace(key.begin(), key.end(), '_', '-');
    settings[key] = value;
  }
  return settings;
}

std::string env_name(std::string_view key) {
  std::string name = "SESSIZ_";
  for (const char c : key) {
    name.push_back(c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return name;
}

// Stage-qualified keys ("report.from", SESSIZ_REPORT_FROM) win over bare ones.
std::optional<std::string> lookup(const Settings& config, std::string_view stage,
                                  std::string_view key) {
  const auto qualified = fmt::format("{}.{}", stage, key);
  for (const auto& k : {qualified, std::string(key)}) {
    if (const auto it = config.find(k); it != config.end()) return it->second;
  }
  for (const auto& k : {fmt::format("{}-{}", stage, key), std::string(key)}) {
    if (const char* v = std::getenv(env_name(k).c_str())) return std::string(v);
  }
  return std::nullopt;
}

// Fills every option of `app` that was not given on the command line from
// the config file, then the environment.
void apply_fallbacks(CLI::App& app, const Settings& config) {
  const std::string stage = app.get_parent() ? app.get_name() : std::string("sessiz");
  for (CLI::Option* opt : app.get_options()) {
    const auto& key = opt->get_lnames();
    if (key.empty() || opt->count() > 0) continue;
    const auto& name = key.front();
    if (name == "help" || name == "config" || name == "version") continue;
    if (const auto value = lookup(config, stage, name)) {
      opt->add_result(*value);
      opt->run_callback();
    }
  }
}

struct Raw {
  std::string format = "csv";
  std::string backend = "interchange";
  std::string resolution = "month";
  std::string input_format = "normalized";
};

void add_ingest_flags(CLI::App& app, IngestOptions& o, Raw& raw) {
  app.add_option("--input", o.input, "Posts file (CSV or JSONL)");
  app.add_option("--format", raw.format, "Input format: csv or jsonl");
  app.add_option("--time-format", o.time_format, "strftime-style pattern for created_at");
  app.add_option("--from", o.from, "Window start, inclusive (ISO-8601)");
  app.add_option("--to", o.to, "Window end, inclusive; a bare date means the whole day");
  app.add_option("--lang", o.lang, "Language tag to keep");
}

void print_version(std::ostream& out, const std::string& model, const std::string& backend) {
  out << "sessiz " << kVersion << '\n';
  if (model.empty()) return;
  const auto scorer = load_backend(parse_backend_kind(backend), model);
  const auto info = scorer->info();
  out << "model " << info.name << ' ' << info.version << " (" << model << ")\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Turkish social-media emotion analysis pipeline", "sessiz"};
  app.require_subcommand(0, 1);
  app.fallthrough(false);

  std::string config_path;
  bool version = false;
  std::string version_model;
  std::string version_backend = "interchange";
  app.add_option("--config", config_path, "key = value settings file (flags take precedence)");
  app.add_flag("--version", version, "Print version and, with --model, model metadata");
  app.add_option("--model", version_model, "Model directory reported by --version");
  app.add_option("--backend", version_backend, "Backend kind for --model: interchange or mock");

  Raw raw;
  unsigned threads = 0;

  IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Load, window and language-filter posts");
  add_ingest_flags(*ingest_cmd, ingest, raw);
  ingest_cmd->add_option("--output", ingest.output, "Output JSONL");

  NormalizeOptions normalize;
  auto* normalize_cmd = app.add_subcommand("normalize", "Apply substitution rules and emoji translation");
  normalize_cmd->add_option("--input", normalize.input, "Ingested JSONL");
  normalize_cmd->add_option("--lexicon", normalize.lexicon, "Emoji lexicon CSV");
  normalize_cmd->add_option("--output", normalize.output, "Normalized JSONL");
  normalize_cmd->add_option("--threads", normalize.threads, "Worker threads (0 = all cores)");

  auto* corpus_cmd = app.add_subcommand("corpus", "Labeled-corpus preparation");
  corpus_cmd->require_subcommand(1);
  BalanceOptions bal;
  std::uint64_t bal_seed = 0;
  auto* balance_cmd = corpus_cmd->add_subcommand("balance", "Validated-only, lowercased, downsampled");
  balance_cmd->add_option("--input", bal.input, "Labeled corpus CSV");
  balance_cmd->add_option("--column-map", bal.column_map, "Header remapping, e.g. ID=id,Entry=text");
  auto* bal_seed_opt = balance_cmd->add_option("--seed", bal_seed, "Sampling seed");
  balance_cmd->add_option("--output", bal.output, "Balanced corpus CSV");

  SplitOptions spl;
  std::uint64_t spl_seed = 0;
  auto* split_cmd = corpus_cmd->add_subcommand("split", "Stratified train/test split");
  split_cmd->add_option("--input", spl.input, "Balanced corpus CSV");
  split_cmd->add_option("--test-fraction", spl.test_fraction, "Test share per class");
  auto* spl_seed_opt = split_cmd->add_option("--seed", spl_seed, "Shuffle seed");
  split_cmd->add_option("--train", spl.train, "Train CSV");
  split_cmd->add_option("--test", spl.test, "Test CSV");

  PredictOptions pred;
  auto* predict_cmd = app.add_subcommand("predict", "Score texts and apply the confidence threshold");
  predict_cmd->add_option("--input", pred.input, "Normalized JSONL or corpus CSV");
  predict_cmd->add_option("--input-format", raw.input_format, "normalized or corpus");
  predict_cmd->add_option("--model", pred.model, "Model directory");
  predict_cmd->add_option("--backend", raw.backend, "interchange or mock");
  predict_cmd->add_option("--threshold", pred.threshold, "Minimum top probability");
  predict_cmd->add_flag("--argmax", pred.argmax, "Always take the top class");
  predict_cmd->add_flag("--skip-errors", pred.skip_errors, "Drop posts the backend fails on");
  predict_cmd->add_option("--output", pred.output, "Predictions CSV");

  EvaluateOptions eval;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Confusion matrix and per-class metrics");
  evaluate_cmd->add_option("--truth", eval.truth, "Labeled test CSV");
  evaluate_cmd->add_option("--pred", eval.predictions, "Predictions CSV");
  evaluate_cmd->add_option("--out", eval.output, "report.json or report.csv");

  AggregateOptions agg;
  std::string agg_from;
  std::string agg_to;
  auto* aggregate_cmd = app.add_subcommand("aggregate", "Distributions, monthly volume and series");
  aggregate_cmd->add_option("--pred", agg.predictions, "Predictions CSV");
  aggregate_cmd->add_option("--resolution", raw.resolution, "Series bucket: day or month");
  aggregate_cmd->add_option("--year", agg.years, "Also write distribution_<year>.csv")
      ->delimiter(',');
  auto* agg_from_opt = aggregate_cmd->add_option("--from", agg_from, "Window start");
  auto* agg_to_opt = aggregate_cmd->add_option("--to", agg_to, "Window end");
  aggregate_cmd->add_flag("--compact-zero", agg.compact_zero, "Print zero percentages as 0");
  aggregate_cmd->add_option("--out", agg.output_dir, "Output directory");

  ReportOptions rep;
  auto* report_cmd = app.add_subcommand("report", "Render SVG charts from aggregates");
  report_cmd->add_option("--from", rep.input_dir, "Aggregate directory");
  report_cmd->add_option("--charts", rep.charts_dir, "Chart output directory");
  report_cmd->add_flag("--compact-zero", rep.compact_zero, "Print zero percentages as 0");

  PipelineOptions pipe;
  std::uint64_t pipe_seed = 0;
  std::string pipe_corpus;
  auto* pipeline_cmd = app.add_subcommand("pipeline", "Run every stage in order");
  add_ingest_flags(*pipeline_cmd, pipe.ingest, raw);
  pipeline_cmd->add_option("--lexicon", pipe.lexicon, "Emoji lexicon CSV");
  pipeline_cmd->add_option("--model", pipe.model, "Model directory");
  pipeline_cmd->add_option("--backend", raw.backend, "interchange or mock");
  pipeline_cmd->add_option("--threshold", pipe.threshold, "Minimum top probability");
  pipeline_cmd->add_flag("--skip-errors", pipe.skip_errors, "Drop posts the backend fails on");
  pipeline_cmd->add_option("--threads", threads, "Normalization threads (0 = all cores)");
  pipeline_cmd->add_option("--resolution", raw.resolution, "Series bucket: day or month");
  pipeline_cmd->add_flag("--compact-zero", pipe.compact_zero, "Print zero percentages as 0");
  auto* pipe_corpus_opt =
      pipeline_cmd->add_option("--corpus", pipe_corpus, "Labeled corpus for balance/split/evaluate");
  pipeline_cmd->add_option("--column-map", pipe.column_map, "Header remapping for --corpus");
  auto* pipe_seed_opt = pipeline_cmd->add_option("--seed", pipe_seed, "Seed for balance and split");
  pipeline_cmd->add_option("--test-fraction", pipe.test_fraction, "Test share per class");
  pipeline_cmd->add_option("--out", pipe.output_dir, "Output directory");
  for (CLI::App* cmd : {ingest_cmd, normalize_cmd, balance_cmd, split_cmd, predict_cmd, evaluate_cmd,
                        aggregate_cmd, report_cmd, pipeline_cmd}) {
    cmd->add_option("--config", config_path, "key = value settings file (flags take precedence)");
  }

  std::string stage = "cli";
  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::reverse(args.begin(), args.end());
    app.parse(args);

    if (config_path.empty()) {
      if (const char* env = std::getenv("SESSIZ_CONFIG")) config_path = env;
    }
    const Settings config = config_path.empty() ? Settings{} : read_config(config_path);

    if (version) {
      apply_fallbacks(app, config);
      print_version(out, version_model, version_backend);
      return kExitOk;
    }

    const auto chosen = app.get_subcommands();
    if (chosen.empty()) {
      err << app.help();
      return kExitValidation;
    }
    CLI::App* cmd = chosen.front();
    if (cmd == corpus_cmd) cmd = corpus_cmd->get_subcommands().front();
    stage = cmd == balance_cmd ? "corpus balance" : cmd == split_cmd ? "corpus split" : cmd->get_name();
    apply_fallbacks(*cmd, config);

    if (cmd == ingest_cmd) {
      ingest.format = parse_input_format(raw.format);
      run_ingest(ingest);
    } else if (cmd == normalize_cmd) {
      run_normalize(normalize);
    } else if (cmd == balance_cmd) {
      if (bal_seed_opt->count() > 0) bal.seed = bal_seed;
      run_balance(bal);
    } else if (cmd == split_cmd) {
      if (spl_seed_opt->count() > 0) spl.seed = spl_seed;
      run_split(spl);
    } else if (cmd == predict_cmd) {
      pred.backend = parse_backend_kind(raw.backend);
      pred.input_format = parse_predict_input(raw.input_format);
      run_predict(pred);
    } else if (cmd == evaluate_cmd) {
      run_evaluate(eval);
    } else if (cmd == aggregate_cmd) {
      agg.resolution = parse_resolution(raw.resolution);
      if (agg_from_opt->count() > 0) agg.from = agg_from;
      if (agg_to_opt->count() > 0) agg.to = agg_to;
      run_aggregate(agg);
    } else if (cmd == report_cmd) {
      run_report(rep);
    } else if (cmd == pipeline_cmd) {
      pipe.ingest.format = parse_input_format(raw.format);
      pipe.backend = parse_backend_kind(raw.backend);
      pipe.resolution = parse_resolution(raw.resolution);
      pipe.threads = threads;
      validate_threshold(pipe.threshold);
      if (pipe_seed_opt->count() > 0) pipe.seed = pipe_seed;
      if (pipe_corpus_opt->count() > 0) {
        pipe.corpus = pipe_corpus;
        require_seed(pipe.seed);
        validate_fraction(pipe.test_fraction);
      }
      run_pipeline(pipe);
    }
    return kExitOk;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "sessiz: error: " << e.what() << '\n' << app.help();
    return kExitValidation;
  } catch (...) {
    return exit_code_for_current_exception(err, stage);
  }
}

}  // namespace sessiz::cli
