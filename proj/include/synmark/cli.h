// Copyright 2026 The Synmark Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SYNMARK_CLI_H_
#define SYNMARK_CLI_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace synmark {

// Exit statuses of Run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitDocumentError = 1;
inline constexpr int kExitConfigError = 2;

struct CliConfig {
  std::string command;      // inject, detect, attack, eval, conformance
  std::string input_path;   // empty or "-" reads stdin
  std::string output_path;  // empty or "-" writes stdout
  std::string config_path;
  std::optional<std::string> provider;  // lexicon or remote
  std::optional<std::string> mode;      // fast or precise
  std::optional<double> alpha;
  std::optional<std::string> attack_kind;
  std::optional<double> attack_p;
  uint64_t seed = 0;
  std::optional<std::string> remote_endpoint;

  // Text field read by detect, attack and eval. Empty picks "attacked",
  // then "watermarked", then "text", whichever is present first.
  std::string field;
  std::optional<std::string> transformer_endpoint;
  std::optional<std::string> transformer_tape;
  std::string route;
  std::optional<std::string> roc_out;       // eval: ROC curve CSV
  std::optional<std::string> request_tape;  // conformance: provider requests
  bool trace = false;
  size_t threads = 0;  // 0 uses every core
};

// Runs one command over a newline-delimited JSON corpus. Diagnostics go to
// `diag`.
int Run(const CliConfig& cli, std::ostream& diag);

// Parses argv into a CliConfig and runs it.
int RunMain(int argc, char** argv);

}  // namespace synmark

#endif  // SYNMARK_CLI_H_
