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

#include "synmark/keyvalue.h"

#include <fstream>
#include <sstream>

#include "synmark/errors.h"

namespace synmark {

std::string_view Trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

KeyValueSections ParseKeyValue(std::string_view text) {
  KeyValueSections sections;
  std::string section;
  std::string* last_value = nullptr;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') {
      continue;
    }
    const bool indented = raw.front() == ' ' || raw.front() == '\t';
    if (indented && last_value != nullptr) {
      if (!last_value->empty()) last_value->push_back('\n');
      last_value->append(line);
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no) +
                          ": unterminated section header");
      }
      section = std::string(Trim(line.substr(1, line.size() - 2)));
      sections[section];
      last_value = nullptr;
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    const std::string key(Trim(line.substr(0, eq)));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    }
    auto [it, inserted] =
        sections[section].emplace(key, std::string(Trim(line.substr(eq + 1))));
    if (!inserted) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" +
                        key + "'");
    }
    last_value = &it->second;
  }
  return sections;
}

KeyValueSections LoadKeyValueFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseKeyValue(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace synmark
