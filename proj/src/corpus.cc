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

#include "synmark/corpus.h"

#include "synmark/errors.h"
#include "synmark/keyvalue.h"

namespace synmark {

bool CorpusReader::Next(CorpusRecord& record) {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_no_;
    if (Trim(line).empty()) continue;
    record = CorpusRecord{};
    record.line_no = line_no_;
    record.id = "line:" + std::to_string(line_no_);
    nlohmann::ordered_json parsed = nlohmann::ordered_json::parse(line, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object()) {
      record.error = "line " + std::to_string(line_no_) + " is not a JSON object";
      return true;
    }
    if (const auto it = parsed.find("id"); it != parsed.end()) {
      if (it->is_string()) {
        record.id = it->get<std::string>();
      } else if (it->is_number_integer()) {
        record.id = std::to_string(it->get<int64_t>());
      } else {
        record.error = "id must be a string";
      }
    }
    record.fields = std::move(parsed);
    return true;
  }
  return false;
}

std::vector<CorpusRecord> CorpusReader::NextBatch(size_t max) {
  std::vector<CorpusRecord> batch;
  CorpusRecord record;
  while (batch.size() < max && Next(record)) batch.push_back(std::move(record));
  return batch;
}

std::string RequireText(const CorpusRecord& record, const std::string& name) {
  const auto it = record.fields.find(name);
  if (it == record.fields.end() || !it->is_string()) {
    throw InvalidArgumentError("record lacks a string '" + name + "' field");
  }
  return it->get<std::string>();
}

void WriteRecord(std::ostream& out, const nlohmann::ordered_json& record) {
  out << record.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace)
      << '\n';
}

}  // namespace synmark
