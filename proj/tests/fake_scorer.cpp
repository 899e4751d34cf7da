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

// Stand-in for an exported model's serve command, speaking the interchange
// line protocol: one {"text": ...} request per stdin line, one answer per
// stdout line. Logit i is the number of times the digit i occurs in the text.
//
// Modes (first argument):
//   digits           answer every request
//   error-on <word>  answer {"error": ...} for texts containing <word>
//   short            drop the last answer
//   fail             exit with status 7 after reading the input
//   garbage          answer with a non-JSON line
//   check-cwd        answer an error unless ./model.onnx is readable

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "json.hpp"

int main(int argc, char** argv) {
  const std::string mode = argc > 1 ? argv[1] : "digits";
  const std::string word = argc > 2 ? argv[2] : "";
  std::vector<std::string> texts;
  std::string line;
  while (std::getline(std::cin, line)) {
    texts.push_back(nlohmann::json::parse(line).at("text").get<std::string>());
  }
  if (mode == "fail") return 7;
  if (mode == "short" && !texts.empty()) texts.pop_back();
  const bool in_artifact = std::ifstream("model.onnx").good();

  for (const auto& t : texts) {
    if (mode == "garbage") {
      std::cout << "not json\n";
      continue;
    }
    if ((mode == "error-on" && t.find(word) != std::string::npos) ||
        (mode == "check-cwd" && !in_artifact)) {
      std::cout << nlohmann::json{{"error", "cannot score: " + t}}.dump() << '\n';
      continue;
    }
    std::array<int, 6> logits{};
    for (const char c : t) {
      if (c >= '0' && c <= '5') ++logits[static_cast<std::size_t>(c - '0')];
    }
    std::cout << nlohmann::json{{"logits", logits}}.dump() << '\n';
  }
  return 0;
}
