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

#ifndef SYNMARK_INJECT_H_
#define SYNMARK_INJECT_H_

#include <string>
#include <vector>

#include "synmark/config.h"
#include "synmark/textmodel.h"

namespace synmark {

struct Replacement {
  size_t token_index = 0;
  std::string original_surface;
  std::string new_surface;
};

struct InjectionReport {
  Document doc_out;
  std::vector<Replacement> replacements;
  size_t visited = 0;  // eligible tokens found carrying bit 0
  size_t replaced = 0;
  size_t skipped_no_candidate = 0;
};

// Scans tokens left to right from index 1. Each eligible token whose bit
// against its current (possibly already substituted) predecessor is 0 is
// replaced by the highest-s_word filtered candidate that encodes bit 1
// there and stays eligible under the tagger; tokens without such a
// candidate are left alone. `doc` must be tagged and filtered with
// cfg.exclusion.
InjectionReport Inject(const Document& doc, const WatermarkConfig& cfg);

}  // namespace synmark

#endif  // SYNMARK_INJECT_H_
