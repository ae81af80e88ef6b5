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

#include "synmark/textmodel.h"

#include <algorithm>
#include <array>
#include <utility>

#include "synmark/errors.h"
#include "synmark/keyvalue.h"
#include "synmark/unicode.h"

namespace synmark {
namespace {

constexpr std::array<std::pair<Pos, std::string_view>, 13> kPosNames = {{
    {Pos::kNoun, "NOUN"},
    {Pos::kVerb, "VERB"},
    {Pos::kAdj, "ADJ"},
    {Pos::kAdv, "ADV"},
    {Pos::kPron, "PRON"},
    {Pos::kPrep, "PREP"},
    {Pos::kConj, "CONJ"},
    {Pos::kDet, "DET"},
    {Pos::kNum, "NUM"},
    {Pos::kPropn, "PROPN"},
    {Pos::kPunct, "PUNCT"},
    {Pos::kSym, "SYM"},
    {Pos::kOther, "OTHER"},
}};

bool IsEdgeMark(char32_t c) {
  return unicode::IsPunctuation(c) || unicode::IsSymbol(c);
}

bool IsSentenceTerminator(std::string_view surface) {
  return surface == "." || surface == "!" || surface == "?" ||
         surface == "。" || surface == "！" || surface == "？";
}

void AddToken(Document& doc, size_t begin, size_t end) {
  Token token;
  token.surface = doc.text.substr(begin, end - begin);
  token.span = {begin, end};
  token.casing = DetectCasing(token.surface);
  doc.tokens.push_back(std::move(token));
}

// Splits the whitespace-free chunk text[begin, end) into tokens.
void SplitChunk(Document& doc, size_t begin, size_t end) {
  const std::string_view text = doc.text;
  // Code point boundaries inside the chunk.
  std::vector<size_t> bounds;
  std::vector<bool> edge;
  for (size_t pos = begin; pos < end;) {
    bounds.push_back(pos);
    edge.push_back(IsEdgeMark(unicode::NextCodePoint(text, pos)));
  }
  bounds.push_back(end);
  const size_t n = edge.size();
  size_t lead = 0;
  while (lead < n && edge[lead]) ++lead;
  if (lead == n) {
    for (size_t i = 0; i < n; ++i) AddToken(doc, bounds[i], bounds[i + 1]);
    return;
  }
  size_t trail = n;
  while (trail > lead && edge[trail - 1]) --trail;
  for (size_t i = 0; i < lead; ++i) AddToken(doc, bounds[i], bounds[i + 1]);
  AddToken(doc, bounds[lead], bounds[trail]);
  for (size_t i = trail; i < n; ++i) AddToken(doc, bounds[i], bounds[i + 1]);
}

void SegmentSentences(Document& doc) {
  size_t start = 0;
  for (size_t i = 0; i < doc.tokens.size(); ++i) {
    const Token& t = doc.tokens[i];
    if (!IsSentenceTerminator(t.surface)) continue;
    bool boundary = t.span.end == doc.text.size();
    if (!boundary) {
      size_t pos = t.span.end;
      boundary = unicode::IsWhitespace(unicode::NextCodePoint(doc.text, pos));
    }
    if (boundary) {
      doc.sentences.push_back({start, i + 1});
      start = i + 1;
    }
  }
  if (start < doc.tokens.size()) {
    doc.sentences.push_back({start, doc.tokens.size()});
  }
}

std::vector<std::string> SplitList(std::string_view value, char sep) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos <= value.size()) {
    size_t next = value.find(sep, pos);
    if (next == std::string_view::npos) next = value.size();
    const std::string_view item = Trim(value.substr(pos, next - pos));
    if (!item.empty()) out.emplace_back(item);
    pos = next + 1;
  }
  return out;
}

}  // namespace

std::string_view PosName(Pos pos) {
  for (const auto& [p, name] : kPosNames) {
    if (p == pos) return name;
  }
  return "OTHER";
}

Pos ParsePos(std::string_view name) {
  for (const auto& [p, n] : kPosNames) {
    if (n == name) return p;
  }
  throw ConfigError("unknown POS tag '" + std::string(name) + "'");
}

Casing DetectCasing(std::string_view surface) {
  size_t upper = 0;
  size_t lower = 0;
  bool first_cased_upper = false;
  bool seen_cased = false;
  for (size_t pos = 0; pos < surface.size();) {
    const char32_t c = unicode::NextCodePoint(surface, pos);
    const bool is_upper = unicode::IsUpper(c);
    const bool is_lower = unicode::IsLower(c);
    if (!is_upper && !is_lower) continue;
    if (!seen_cased) {
      seen_cased = true;
      first_cased_upper = is_upper;
    }
    upper += is_upper;
    lower += is_lower;
  }
  if (upper == 0) return Casing::kLower;
  if (upper == 1 && first_cased_upper) return Casing::kCapitalized;
  if (lower == 0) return Casing::kUpper;
  return Casing::kMixed;
}

size_t Document::SentenceOf(size_t index) const {
  const auto it = std::upper_bound(
      sentences.begin(), sentences.end(), index,
      [](size_t i, const SentenceRange& s) { return i < s.end; });
  if (it == sentences.end() || index < it->begin) {
    throw InvalidArgumentError("token index " + std::to_string(index) +
                               " outside every sentence");
  }
  return static_cast<size_t>(it - sentences.begin());
}

std::vector<std::string> Document::Surfaces() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const Token& t : tokens) out.push_back(t.surface);
  return out;
}

Document Tokenize(std::string_view text) {
  Document doc;
  doc.text = unicode::Nfc(text);
  const std::string_view t = doc.text;
  size_t chunk_begin = std::string_view::npos;
  for (size_t pos = 0; pos < t.size();) {
    const size_t here = pos;
    const char32_t c = unicode::NextCodePoint(t, pos);
    if (unicode::IsWhitespace(c)) {
      if (chunk_begin != std::string_view::npos) {
        SplitChunk(doc, chunk_begin, here);
        chunk_begin = std::string_view::npos;
      }
    } else if (chunk_begin == std::string_view::npos) {
      chunk_begin = here;
    }
  }
  if (chunk_begin != std::string_view::npos) {
    SplitChunk(doc, chunk_begin, t.size());
  }
  SegmentSentences(doc);
  return doc;
}

std::string Render(const Document& doc) {
  std::string out;
  out.reserve(doc.text.size());
  size_t prev_end = 0;
  for (const Token& t : doc.tokens) {
    out.append(doc.text, prev_end, t.span.begin - prev_end);
    out.append(t.surface);
    prev_end = t.span.end;
  }
  out.append(doc.text, prev_end, std::string::npos);
  return out;
}

Document WithSurfaces(const Document& doc,
                      std::span<const std::string> surfaces) {
  if (surfaces.size() != doc.tokens.size()) {
    throw InvalidArgumentError("surface count does not match token count");
  }
  Document out;
  out.sentences = doc.sentences;
  out.tokens.reserve(doc.tokens.size());
  size_t prev_end = 0;
  for (size_t i = 0; i < doc.tokens.size(); ++i) {
    const Token& t = doc.tokens[i];
    out.text.append(doc.text, prev_end, t.span.begin - prev_end);
    Token copy = t;
    copy.surface = surfaces[i];
    copy.span.begin = out.text.size();
    out.text.append(copy.surface);
    copy.span.end = out.text.size();
    copy.casing = DetectCasing(copy.surface);
    out.tokens.push_back(std::move(copy));
    prev_end = t.span.end;
  }
  out.text.append(doc.text, prev_end, std::string::npos);
  return out;
}

Document TagPos(Document doc, const Tagger& tagger) {
  for (size_t i = 0; i < doc.tokens.size(); ++i) {
    doc.tokens[i].pos = tagger.TagAt(doc, i);
  }
  return doc;
}

Document TagPos(Document doc, std::string_view tagger_name) {
  const TaggerHandle tagger = FindTagger(tagger_name);
  return TagPos(std::move(doc), *tagger);
}

bool PassesFilter(const Token& token, const ExclusionList& exclusions) {
  if (exclusions.excluded_pos.contains(token.pos)) return false;
  if (exclusions.excluded_surfaces.contains(token.surface)) return false;
  return !exclusions.excluded_surfaces.contains(unicode::ToLower(token.surface));
}

Document ApplyFilter(Document doc, const ExclusionList& exclusions) {
  for (size_t i = 0; i < doc.tokens.size(); ++i) {
    Token& t = doc.tokens[i];
    t.eligible = i > 0 && PassesFilter(t, exclusions);
  }
  return doc;
}

std::string Recase(const Token& original, std::string_view replacement) {
  if (replacement.empty()) {
    throw InvalidArgumentError("replacement surface is empty");
  }
  switch (original.casing) {
    case Casing::kCapitalized:
      return unicode::UpperFirst(replacement);
    case Casing::kUpper:
      return unicode::ToUpper(replacement);
    case Casing::kLower:
      return unicode::ToLower(replacement);
    case Casing::kMixed:
      break;
  }
  return std::string(replacement);
}

ExclusionList PresetExclusions(std::string_view language) {
  ExclusionList list;
  list.language = std::string(language);
  if (language == "en") {
    list.excluded_pos = {Pos::kPron, Pos::kPrep,  Pos::kConj, Pos::kDet,
                         Pos::kNum,  Pos::kPropn, Pos::kPunct, Pos::kSym};
    list.excluded_surfaces = {"mr", "mrs", "ms", "dr", "st"};
    return list;
  }
  if (language == "zh") {
    list.excluded_pos = {Pos::kPron, Pos::kPrep,  Pos::kConj, Pos::kNum,
                         Pos::kPropn, Pos::kPunct, Pos::kSym};
    // Auxiliary and modal particles.
    list.excluded_surfaces = {"的", "地", "得", "了",
                              "着", "过", "吗", "呢",
                              "吧", "啊", "所"};
    return list;
  }
  throw ConfigError("no exclusion preset for language '" +
                    std::string(language) + "'");
}

ExclusionList ParseExclusionSection(
    std::string_view language, const std::map<std::string, std::string>& keys) {
  ExclusionList list;
  list.language = std::string(language);
  for (const auto& [key, value] : keys) {
    if (key == "excluded_pos") {
      for (const std::string& tag : SplitList(value, ',')) {
        list.excluded_pos.insert(ParsePos(tag));
      }
    } else if (key == "excluded_surfaces") {
      for (const std::string& word : SplitList(value, '\n')) {
        list.excluded_surfaces.insert(unicode::Nfc(word));
      }
    } else {
      throw ConfigError("unknown exclusion key '" + key + "' in section [" +
                        list.language + "]");
    }
  }
  return list;
}

std::map<std::string, ExclusionList> LoadExclusionLists(const std::string& path) {
  std::map<std::string, ExclusionList> out;
  for (const auto& [section, keys] : LoadKeyValueFile(path)) {
    if (section.empty()) {
      if (!keys.empty()) {
        throw ConfigError(path + ": exclusion keys outside a language section");
      }
      continue;
    }
    out.emplace(section, ParseExclusionSection(section, keys));
  }
  return out;
}

Analyzer::Analyzer(TaggerHandle tagger, ExclusionList exclusions)
    : tagger_(std::move(tagger)), exclusions_(std::move(exclusions)) {
  if (tagger_ == nullptr) throw ConfigError("analyzer requires a tagger");
}

Document Analyzer::Analyze(std::string_view text) const {
  return Reanalyze(Tokenize(text));
}

Document Analyzer::Reanalyze(Document doc) const {
  return ApplyFilter(TagPos(std::move(doc), *tagger_), exclusions_);
}

bool Analyzer::EligibleInContext(const Document& doc, size_t index) const {
  if (index == 0 || index >= doc.tokens.size()) return false;
  Token probe = doc.tokens[index];
  probe.pos = tagger_->TagAt(doc, index);
  return PassesFilter(probe, exclusions_);
}

}  // namespace synmark
