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

#include "sessiz/interchange.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

#include <fmt/format.h>

#include "json.hpp"
#include "sessiz/error.hpp"

namespace sessiz {

namespace {

using json = nlohmann::json;

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  auto doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw ValidationError(path.string() + ": invalid JSON");
  return doc;
}

// Accepts {"0": "Happy", ...} or {"id2label": {...}}; must be exactly the six codes.
void check_label_map(const json& doc, const std::filesystem::path& path) {
  const json& map = doc.contains("id2label") ? doc["id2label"] : doc;
  if (!map.is_object() || map.size() != kNumEmotions) {
    throw ValidationError(path.string() + ": label map must have exactly six entries");
  }
  for (const Emotion e : kEmotions) {
    const auto it = map.find(std::to_string(code(e)));
    if (it == map.end() || !it->is_string() ||
        parse_emotion(it->get<std::string>()) != e) {
      throw ValidationError(fmt::format("{}: code {} must map to {}", path.string(), code(e),
                                        label_name(e)));
    }
  }
}

class TempFile {
 public:
  explicit TempFile(const char* tag) {
    auto pattern = (std::filesystem::temp_directory_path() / fmt::format("sessiz-{}-XXXXXX", tag))
                       .string();
    const int fd = ::mkstemp(pattern.data());
    if (fd < 0) throw IoError("cannot create temporary file");
    ::close(fd);
    path_ = pattern;
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Runs argv in `cwd` with stdin/stdout redirected to files; returns the exit status.
int run_redirected(const std::vector<std::string>& argv, const std::filesystem::path& cwd,
                   const std::filesystem::path& in, const std::filesystem::path& out) {
  // Everything the child touches is prepared first; after fork it only makes
  // async-signal-safe calls.
  std::vector<char*> args;
  for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);

  const pid_t pid = ::fork();
  if (pid < 0) throw BackendError("fork failed");
  if (pid == 0) {
    const int in_fd = ::open(in.c_str(), O_RDONLY);
    const int out_fd = ::open(out.c_str(), O_WRONLY | O_TRUNC);
    if (in_fd < 0 || out_fd < 0 || ::dup2(in_fd, STDIN_FILENO) < 0 ||
        ::dup2(out_fd, STDOUT_FILENO) < 0 || ::chdir(cwd.c_str()) != 0) {
      ::_exit(126);
    }
    ::execvp(args[0], args.data());
    ::_exit(127);
  }
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0) {
    if (errno != EINTR) throw BackendError("waitpid failed");
  }
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
}

ScoreOutcome parse_answer(const std::string& line) {
  const auto doc = json::parse(line, nullptr, false);
  if (!doc.is_object()) return {std::nullopt, "scorer answered with non-object line"};
  if (const auto it = doc.find("error"); it != doc.end()) {
    return {std::nullopt, it->is_string() ? it->get<std::string>() : it->dump()};
  }
  const auto it = doc.find("logits");
  if (it == doc.end() || !it->is_array() || it->size() != kNumEmotions) {
    return {std::nullopt, "scorer answer lacks six logits"};
  }
  EmotionLogits logits;
  for (std::size_t i = 0; i < kNumEmotions; ++i) {
    const auto& v = (*it)[i];
    if (!v.is_number() || !std::isfinite(v.get<double>())) {
      return {std::nullopt, "scorer returned a non-finite logit"};
    }
    logits.values[i] = v.get<double>();
  }
  return {logits, {}};
}

}  // namespace

InterchangeBackend InterchangeBackend::load(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw ValidationError("model artifact " + dir.string() + " is not a directory");
  }
  if (!std::filesystem::is_regular_file(dir / "model.onnx")) {
    throw ValidationError("model artifact lacks model.onnx");
  }
  const auto tok = dir / "tokenizer";
  if (!std::filesystem::is_directory(tok) || std::filesystem::is_empty(tok)) {
    throw ValidationError("model artifact lacks tokenizer files");
  }
  check_label_map(read_json(dir / "label_map.json"), dir / "label_map.json");

  const json meta = read_json(dir / "metadata.json");
  if (!meta.is_object()) throw ValidationError("metadata.json must be an object");
  BackendInfo info{meta.value("name", std::string("interchange")),
                   meta.value("version", std::string("unknown"))};
  const auto serve = meta.find("serve");
  if (serve == meta.end() || !serve->is_array() || serve->empty()) {
    throw ValidationError("metadata.json must give a non-empty \"serve\" argv");
  }
  std::vector<std::string> command;
  for (const auto& arg : *serve) {
    if (!arg.is_string()) throw ValidationError("metadata.json \"serve\" must hold strings");
    command.push_back(arg.get<std::string>());
  }
  return InterchangeBackend(std::filesystem::absolute(dir), std::move(info), std::move(command));
}

EmotionLogits InterchangeBackend::score(std::string_view text) const {
  const std::string one(text);
  auto outcomes = score_batch(std::span(&one, 1));
  if (!outcomes[0].logits) throw BackendError(outcomes[0].error);
  return *outcomes[0].logits;
}

std::vector<ScoreOutcome> InterchangeBackend::score_batch(
    std::span<const std::string> texts) const {
  if (texts.empty()) return {};
  TempFile request("req");
  TempFile response("resp");
  {
    std::ofstream out(request.path(), std::ios::binary);
    for (const auto& t : texts) {
      out << json{{"text", t}}.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
    }
    if (!out) throw IoError("cannot write scorer request");
  }
  const int status = run_redirected(command_, dir_, request.path(), response.path());
  if (status != 0) {
    throw BackendError(fmt::format("{} scorer exited with status {}", info_.name, status));
  }

  std::ifstream in(response.path(), std::ios::binary);
  std::vector<ScoreOutcome> outcomes;
  outcomes.reserve(texts.size());
  std::string line;
  while (outcomes.size() < texts.size() && std::getline(in, line)) {
    outcomes.push_back(parse_answer(line));
  }
  if (outcomes.size() != texts.size()) {
    throw BackendError(fmt::format("{} scorer answered {} of {} requests", info_.name,
                                   outcomes.size(), texts.size()));
  }
  return outcomes;
}

}  // namespace sessiz
