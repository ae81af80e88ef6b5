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

#ifndef SYNMARK_KEYVALUE_H_
#define SYNMARK_KEYVALUE_H_

#include <map>
#include <string>
#include <string_view>

namespace synmark {

// section -> key -> value. Keys that appear before any [section] header land
// in the "" section.
using KeyValueSections = std::map<std::string, std::map<std::string, std::string>>;

// Parses INI-like text:
//
//   # comment
//   [section]
//   key = value
//   block =
//     first line
//     second line
//
// Indented lines continue the previous key; continuation lines are joined
// with '\n'. Malformed lines and duplicate keys throw ConfigError.
KeyValueSections ParseKeyValue(std::string_view text);
KeyValueSections LoadKeyValueFile(const std::string& path);

std::string_view Trim(std::string_view s);

}  // namespace synmark

#endif  // SYNMARK_KEYVALUE_H_
