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

#ifndef SYNMARK_CORPUS_H_
#define SYNMARK_CORPUS_H_

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace synmark {

// One line of a corpus file: {"id": <str>, "text": <str>, ...}. Lines that
// fail to parse keep their error instead of a record.
struct CorpusRecord {
  size_t line_no = 0;
  std::string id;
  nlohmann::ordered_json fields;
  std::optional<std::string> error;
};

class CorpusReader {
 public:
  explicit CorpusReader(std::istream& in) : in_(in) {}

  // Skips blank lines. Returns false at end of input.
  bool Next(CorpusRecord& record);
  // Reads up to `max` records.
  std::vector<CorpusRecord> NextBatch(size_t max);

 private:
  std::istream& in_;
  size_t line_no_ = 0;
};

// The string field `name`; throws InvalidArgumentError if absent.
std::string RequireText(const CorpusRecord& record, const std::string& name);

void WriteRecord(std::ostream& out, const nlohmann::ordered_json& record);

}  // namespace synmark

#endif  // SYNMARK_CORPUS_H_
