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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sessiz/ingest.hpp"
#include "sessiz/report.hpp"
#include "sessiz/score.hpp"

namespace sessiz::cli {

namespace fs = std::filesystem;

inline constexpr std::string_view kDefaultFrom = "2021-06-01";
inline constexpr std::string_view kDefaultTo = "2022-12-31";

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitBackend = 3;

struct IngestOptions {
  fs::path input;
  InputFormat format = InputFormat::kCsv;
  std::optional<std::string> time_format;
  std::string from{kDefaultFrom};
  std::string to{kDefaultTo};
  std::string lang = "tr";
  fs::path output;
};

struct NormalizeOptions {
  fs::path input;  // ingest output
  fs::path lexicon;
  fs::path output;
  unsigned threads = 0;
};

struct BalanceOptions {
  fs::path input;
  std::string column_map;
  std::optional<std::uint64_t> seed;
  fs::path output;
};

struct SplitOptions {
  fs::path input;  // balance output
  double test_fraction = 0.1;
  std::optional<std::uint64_t> seed;
  fs::path train;
  fs::path test;
};

enum class PredictInput { kNormalized, kCorpus };

struct PredictOptions {
  fs::path input;
  PredictInput input_format = PredictInput::kNormalized;
  fs::path model;
  BackendKind backend = BackendKind::kInterchange;
  double threshold = kDefaultThreshold;
  bool argmax = false;  // threshold-free decisions, for evaluation
  bool skip_errors = false;
  fs::path output;
};

struct EvaluateOptions {
  fs::path truth;
  fs::path predictions;
  fs::path output;  // .csv selects CSV, anything else JSON
};

struct AggregateOptions {
  fs::path predictions;
  Resolution resolution = Resolution::kMonth;
  std::vector<int> years;
  std::optional<std::string> from;
  std::optional<std::string> to;
  bool compact_zero = false;
  fs::path output_dir;
};

struct ReportOptions {
  fs::path input_dir;  // aggregate output
  fs::path charts_dir;
  bool compact_zero = false;
};

struct PipelineOptions {
  IngestOptions ingest;
  fs::path lexicon;
  fs::path model;
  BackendKind backend = BackendKind::kInterchange;
  double threshold = kDefaultThreshold;
  bool skip_errors = false;
  unsigned threads = 0;
  Resolution resolution = Resolution::kMonth;
  bool compact_zero = false;
  // Optional labeled-corpus branch: balance, split, score the test side, evaluate.
  std::optional<fs::path> corpus;
  std::string column_map;
  std::optional<std::uint64_t> seed;
  double test_fraction = 0.1;
  fs::path output_dir;
};

// Stage functions. Each reads and writes files only, so a pipeline run and a
// sequence of single-stage runs with the same options produce the same bytes.
// Failures surface as the sessiz error types.
void run_ingest(const IngestOptions& options);
void run_normalize(const NormalizeOptions& options);
void run_balance(const BalanceOptions& options);
void run_split(const SplitOptions& options);
void run_predict(const PredictOptions& options);
void run_evaluate(const EvaluateOptions& options);
void run_aggregate(const AggregateOptions& options);
void run_report(const ReportOptions& options);
void run_pipeline(const PipelineOptions& options);

/// Parses arguments, applies config-file and SESSIZ_* environment fallbacks
/// (flags win, then the config file, then the environment), runs the selected
/// subcommand and maps errors to exit codes. Messages go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Exit code for the exception currently being handled.
int exit_code_for_current_exception(std::ostream& err, std::string_view stage);

}  // namespace sessiz::cli
