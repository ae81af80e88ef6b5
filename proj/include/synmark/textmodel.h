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

#ifndef SYNMARK_TEXTMODEL_H_
#define SYNMARK_TEXTMODEL_H_

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace synmark {

enum class Pos {
  kNoun,
  kVerb,
  kAdj,
  kAdv,
  kPron,
  kPrep,
  kConj,
  kDet,
  kNum,
  kPropn,
  kPunct,
  kSym,
  kOther,
};

std::string_view PosName(Pos pos);
// Accepts the upper-case tag names ("NOUN", "PROPN", ...). Unknown names
// throw ConfigError.
Pos ParsePos(std::string_view name);

enum class Casing { kLower, kCapitalized, kUpper, kMixed };

Casing DetectCasing(std::string_view surface);

// Byte offsets [begin, end) into Document::text.
struct Span {
  size_t begin = 0;
  size_t end = 0;
};

struct Token {
  std::string surface;
  Span span;
  Pos pos = Pos::kOther;
  bool eligible = false;
  Casing casing = Casing::kLower;
};

// Token indices [begin, end).
struct SentenceRange {
  size_t begin = 0;
  size_t end = 0;
};

// A tokenized text. `text` holds the NFC-normalized input, so every token's
// surface equals text.substr(span.begin, span.end - span.begin).
struct Document {
  std::string text;
  std::vector<Token> tokens;
  std::vector<SentenceRange> sentences;

  size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  // Index into `sentences` of the sentence holding token `index`.
  size_t SentenceOf(size_t index) const;
  std::vector<std::string> Surfaces() const;
};

struct ExclusionList {
  std::string language;
  std::set<Pos> excluded_pos;
  std::set<std::string> excluded_surfaces;
};

// Whitespace tokenization with leading and trailing punctuation split off as
// single-code-point tokens. Sentences end after ., !, ?, 。, ！ or ？ when
// followed by whitespace or the end of the text.
Document Tokenize(std::string_view text);

// Re-renders the token surfaces with the inter-token whitespace of
// doc.text. Equal to doc.text for any document produced by Tokenize.
std::string Render(const Document& doc);

// Returns a copy of `doc` whose token surfaces are replaced by `surfaces`,
// with text and spans rebuilt around the original whitespace. Tags,
// eligibility and sentence ranges carry over.
Document WithSurfaces(const Document& doc,
                      std::span<const std::string> surfaces);

// Assigns a POS tag to one token given its document context.
class Tagger {
 public:
  virtual ~Tagger() = default;
  virtual Pos TagAt(const Document& doc, size_t index) const = 0;
};

using TaggerHandle = std::shared_ptr<const Tagger>;

// Named tagger registry. "rule" is always registered. Unknown names throw
// ConfigError.
TaggerHandle FindTagger(std::string_view name);
void RegisterTagger(std::string name, TaggerHandle tagger);

Document TagPos(Document doc, const Tagger& tagger);
Document TagPos(Document doc, std::string_view tagger_name);

// Marks token eligibility. Token 0 is never eligible because it has no
// predecessor to pair with.
Document ApplyFilter(Document doc, const ExclusionList& exclusions);
bool PassesFilter(const Token& token, const ExclusionList& exclusions);

// Transfers the casing of `original` onto `replacement`.
std::string Recase(const Token& original, std::string_view replacement);

// Shipped exclusion presets: "en" and "zh". Other tags throw ConfigError.
ExclusionList PresetExclusions(std::string_view language);

// Reads a UTF-8 file with one section per language:
//
//   [en]
//   excluded_pos = PRON, PREP, CONJ
//   excluded_surfaces =
//     mr
//     mrs
ExclusionList ParseExclusionSection(std::string_view language,
                                    const std::map<std::string, std::string>& keys);
std::map<std::string, ExclusionList> LoadExclusionLists(const std::string& path);

// Tokenize + tag + filter with fixed settings.
class Analyzer {
 public:
  Analyzer(TaggerHandle tagger, ExclusionList exclusions);

  Document Analyze(std::string_view text) const;
  // Re-tags and re-filters an already tokenized document.
  Document Reanalyze(Document doc) const;
  // Would token `index` be eligible if tagged in its current context?
  bool EligibleInContext(const Document& doc, size_t index) const;

  const Tagger& tagger() const { return *tagger_; }
  const ExclusionList& exclusions() const { return exclusions_; }

 private:
  TaggerHandle tagger_;
  ExclusionList exclusions_;
};

}  // namespace synmark

#endif  // SYNMARK_TEXTMODEL_H_
