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

#include "synmark/config.h"

#include <charconv>
#include <filesystem>

#include "synmark/errors.h"

namespace synmark {
namespace {

std::string ResolvePath(const std::string& base_dir, const std::string& path) {
  const std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return path;
  return (std::filesystem::path(base_dir) / p).string();
}

}  // namespace

double ParseDouble(std::string_view text, std::string_view what) {
  text = Trim(text);
  double value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError("bad number for " + std::string(what) + ": '" +
                      std::string(text) + "'");
  }
  return value;
}

int64_t ParseInt(std::string_view text, std::string_view what) {
  text = Trim(text);
  int64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError("bad integer for " + std::string(what) + ": '" +
                      std::string(text) + "'");
  }
  return value;
}

WatermarkConfig WatermarkConfig::ForLanguage(const std::string& language) {
  WatermarkConfig cfg;
  cfg.language = language;
  cfg.exclusion = PresetExclusions(language);
  cfg.tau_word = language == "zh" ? 0.75 : 0.8;
  return cfg;
}

void WatermarkConfig::Validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ConfigError("lambda must lie in [0, 1]");
  }
  if (k < 1) throw ConfigError("k must be at least 1");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("alpha must lie in (0, 1)");
  }
}

Analyzer WatermarkConfig::MakeAnalyzer() const {
  return Analyzer(FindTagger(tagger), exclusion);
}

FileConfig ParseFileConfig(const KeyValueSections& sections,
                           const std::string& base_dir, FileConfig base) {
  FileConfig out = std::move(base);
  WatermarkConfig& wm = out.watermark;
  std::optional<std::string> exclusion_file;
  for (const auto& [section, keys] : sections) {
    for (const auto& [key, value] : keys) {
      const std::string where = "[" + section + "] " + key;
      if (section == "watermark") {
        if (key == "lambda") {
          wm.lambda = ParseDouble(value, where);
        } else if (key == "k") {
          wm.k = static_cast<int>(ParseInt(value, where));
        } else if (key == "tau_sent") {
          wm.tau_sent = ParseDouble(value, where);
        } else if (key == "tau_word") {
          wm.tau_word = ParseDouble(value, where);
        } else if (key == "alpha") {
          wm.alpha = ParseDouble(value, where);
        } else if (key == "language") {
          wm.language = value;
          wm.tau_word = value == "zh" ? 0.75 : 0.8;  // "tau_word" sorts later
          if (!sections.at("watermark").contains("exclusions")) {
            wm.exclusion = PresetExclusions(value);
          }
        } else if (key == "tagger") {
          FindTagger(value);
          wm.tagger = value;
        } else if (key == "exclusions") {
          exclusion_file = ResolvePath(base_dir, value);
        } else if (key == "provider") {
          if (value != "lexicon" && value != "remote") {
            throw ConfigError(where + ": expected 'lexicon' or 'remote'");
          }
          out.provider = value;
        } else {
          throw ConfigError("unknown key " + where);
        }
      } else if (section == "lexicon") {
        if (key == "vectors") {
          out.lexicon_vectors = ResolvePath(base_dir, value);
        } else if (key == "synonyms") {
          out.lexicon_synonyms = ResolvePath(base_dir, value);
        } else {
          throw ConfigError("unknown key " + where);
        }
      } else if (section == "remote") {
        if (key == "endpoint") {
          out.remote_endpoint = value;
        } else if (key == "timeout") {
          out.remote_timeout = std::chrono::milliseconds(
              static_cast<int64_t>(ParseDouble(value, where) * 1000.0));
        } else if (key == "seed") {
          out.remote_seed = static_cast<uint64_t>(ParseInt(value, where));
        } else {
          throw ConfigError("unknown key " + where);
        }
      } else if (!(section.empty() && keys.empty())) {
        throw ConfigError("unknown config section [" + section + "]");
      }
    }
  }
  if (exclusion_file) {
    const auto lists = LoadExclusionLists(*exclusion_file);
    const auto it = lists.find(wm.language);
    if (it == lists.end()) {
      throw ConfigError(*exclusion_file + ": no section for language '" +
                        wm.language + "'");
    }
    wm.exclusion = it->second;
  }
  wm.Validate();
  return out;
}

FileConfig LoadFileConfig(const std::string& path) {
  const std::filesystem::path p(path);
  return ParseFileConfig(LoadKeyValueFile(path), p.parent_path().string());
}

}  // namespace synmark
