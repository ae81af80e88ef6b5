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

#include "synmark/inject.h"

#include "synmark/encoding.h"
#include "synmark/providers.h"

namespace synmark {

InjectionReport Inject(const Document& doc, const WatermarkConfig& cfg) {
  cfg.Validate();
  InjectionReport report;
  if (doc.empty()) {
    report.doc_out = doc;
    return report;
  }
  const Analyzer analyzer = cfg.MakeAnalyzer();
  // Surfaces are swapped in place; spans are rebuilt once at the end.
  Document work = doc;
  for (size_t i = 1; i < work.tokens.size(); ++i) {
    Token& token = work.tokens[i];
    if (!token.eligible) continue;
    const std::string& prev = work.tokens[i - 1].surface;
    if (EncodePair(prev, token.surface) == 1) continue;
    ++report.visited;
    const CandidateSet set = Candidates(work, i, cfg);
    const std::string original = token.surface;
    const Casing original_casing = token.casing;
    bool done = false;
    for (const Candidate& c : set.filtered) {
      if (EncodePair(prev, c.surface) != 1) continue;
      token.surface = c.surface;
      token.casing = DetectCasing(c.surface);
      if (!analyzer.EligibleInContext(work, i)) {
        token.surface = original;
        token.casing = original_casing;
        continue;
      }
      report.replacements.push_back({i, original, c.surface});
      done = true;
      break;
    }
    if (done) {
      ++report.replaced;
    } else {
      ++report.skipped_no_candidate;
    }
  }
  report.doc_out = WithSurfaces(doc, work.Surfaces());
  return report;
}

}  // namespace synmark
