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

#ifndef SYNMARK_TAGGER_H_
#define SYNMARK_TAGGER_H_

#include <string>
#include <unordered_map>

#include "synmark/textmodel.h"

namespace synmark {

// Lexicon and suffix-rule tagger, registered as "rule". Rules apply in
// order:
//   1. punctuation-only tokens -> PUNCT, other mark-only tokens -> SYM
//   2. digit strings and number words -> NUM
//   3. closed-class lexicon (pronouns, prepositions, conjunctions,
//      determiners, auxiliaries) for English and Chinese
//   4. upper-case initial away from sentence start -> PROPN
//   5. suffixes: -ly ADV; -tion/-sion/-ness/-ment/-ity/-ship/-ism NOUN;
//      -ed/-ing VERB; -ous/-ful/-less/-able/-ible/-ive ADJ
//   6. NOUN
class RuleTagger : public Tagger {
 public:
  RuleTagger();
  Pos TagAt(const Document& doc, size_t index) const override;

 private:
  bool SentenceInitial(const Document& doc, size_t index) const;

  std::unordered_map<std::string, Pos> closed_class_;
};

}  // namespace synmark

#endif  // SYNMARK_TAGGER_H_
