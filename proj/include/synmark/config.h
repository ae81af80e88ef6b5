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

#ifndef SYNMARK_CONFIG_H_
#define SYNMARK_CONFIG_H_

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "synmark/keyvalue.h"
#include "synmark/textmodel.h"

namespace synmark {

class SynonymProvider;
using ProviderHandle = std::shared_ptr<const SynonymProvider>;

// Candidate scoring knobs shared by every provider.
struct ScoringParams {
  double lambda = 0.83;  // weight of the contextual score in s_word
  int k = 32;            // candidates kept per token
  double tau_sent = 0.8;
  double tau_word = 0.8;
};

struct WatermarkConfig {
  double lambda = 0.83;
  int k = 32;
  double tau_sent = 0.8;
  double tau_word = 0.8;
  double alpha = 0.05;
  std::string language = "en";
  std::string tagger = "rule";
  ExclusionList exclusion = PresetExclusions("en");
  ProviderHandle provider;

  // Defaults for `language`: tau_word is 0.75 for "zh" and 0.8 otherwise.
  static WatermarkConfig ForLanguage(const std::string& language);

  // Throws ConfigError unless 0 <= lambda <= 1, k >= 1 and 0 < alpha < 1.
  void Validate() const;
  ScoringParams scoring() const { return {lambda, k, tau_sent, tau_word}; }
  Analyzer MakeAnalyzer() const;
};

// Settings read from the [watermark], [lexicon] and [remote] sections of a
// config file. Providers are built from these by the CLI.
struct FileConfig {
  WatermarkConfig watermark;
  std::optional<std::string> lexicon_vectors;
  std::optional<std::string> lexicon_synonyms;
  std::optional<std::string> remote_endpoint;
  std::chrono::milliseconds remote_timeout{30000};
  std::optional<uint64_t> remote_seed;
  std::optional<std::string> provider;  // "lexicon" or "remote"
};

// Applies recognized keys on top of `base`. Unknown keys and unparsable
// values throw ConfigError. Relative paths resolve against `base_dir`.
FileConfig ParseFileConfig(const KeyValueSections& sections,
                           const std::string& base_dir, FileConfig base = {});
FileConfig LoadFileConfig(const std::string& path);

double ParseDouble(std::string_view text, std::string_view what);
int64_t ParseInt(std::string_view text, std::string_view what);

}  // namespace synmark

#endif  // SYNMARK_CONFIG_H_
