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

#include "synmark/tagger.h"

#include <array>
#include <mutex>
#include <string_view>
#include <utility>

#include "synmark/errors.h"
#include "synmark/unicode.h"

namespace synmark {
namespace {

constexpr std::string_view kPronouns =
    "i me my mine myself you your yours yourself yourselves he him his "
    "himself she her hers herself it its itself we us our ours ourselves they "
    "them their theirs themselves who whom whose which what someone anyone "
    "everyone nobody something anything everything nothing "
    "我 你 您 他 她 它 我们 你们 他们 她们 它们 这 那 这个 那个 这些 那些 自己 "
    "谁 什么";
constexpr std::string_view kPrepositions =
    "about above across after against along among around at before behind "
    "below beneath beside between beyond by despite down during except for "
    "from in inside into like near of off on onto out outside over past since "
    "through throughout to toward towards under underneath until up upon with "
    "within without via per "
    "在 从 对 向 把 被 给 于 以 跟 为";
constexpr std::string_view kConjunctions =
    "and or but nor yet so because although though while whereas if unless "
    "whether than "
    "和 与 及 或 或者 但 但是 而 因为 所以 如果 虽然";
constexpr std::string_view kDeterminers =
    "the a an this that these those each every either neither some any no all "
    "both few many much several most more less such another other";
constexpr std::string_view kNumberWords =
    "zero one two three four five six seven eight nine ten eleven twelve "
    "twenty thirty forty fifty hundred thousand million billion";
constexpr std::string_view kAuxiliaries =
    "is are was were be been being am do does did have has had will would can "
    "could shall should may might must";

constexpr std::string_view kChineseNumerals = "零一二三四五六七八九十百千万亿两";

void AddWords(std::unordered_map<std::string, Pos>& map, std::string_view words,
              Pos pos) {
  size_t pos_in = 0;
  while (pos_in < words.size()) {
    size_t end = words.find(' ', pos_in);
    if (end == std::string_view::npos) end = words.size();
    if (end > pos_in) {
      map.emplace(std::string(words.substr(pos_in, end - pos_in)), pos);
    }
    pos_in = end + 1;
  }
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() + 2 &&
         s.substr(s.size() - suffix.size()) == suffix;
}

bool IsNumeric(std::string_view s) {
  bool digit = false;
  for (size_t pos = 0; pos < s.size();) {
    const char32_t c = unicode::NextCodePoint(s, pos);
    if (unicode::IsDigit(c)) {
      digit = true;
    } else if (c != '.' && c != ',' && c != ':' && c != '/' && c != '%' &&
               c != '-' && c != '+') {
      return false;
    }
  }
  return digit;
}

bool IsChineseNumeral(std::string_view s) {
  if (s.empty()) return false;
  for (size_t pos = 0; pos < s.size();) {
    const size_t start = pos;
    unicode::NextCodePoint(s, pos);
    if (kChineseNumerals.find(s.substr(start, pos - start)) ==
        std::string_view::npos) {
      return false;
    }
  }
  return true;
}

bool StartsUpper(std::string_view s) {
  for (size_t pos = 0; pos < s.size();) {
    const char32_t c = unicode::NextCodePoint(s, pos);
    if (unicode::IsLetter(c)) return unicode::IsUpper(c);
  }
  return false;
}

struct SuffixRule {
  std::string_view suffix;
  Pos pos;
};

constexpr std::array<SuffixRule, 16> kSuffixRules = {{
    {"ly", Pos::kAdv},
    {"tion", Pos::kNoun},
    {"sion", Pos::kNoun},
    {"ness", Pos::kNoun},
    {"ment", Pos::kNoun},
    {"ity", Pos::kNoun},
    {"ship", Pos::kNoun},
    {"ism", Pos::kNoun},
    {"ed", Pos::kVerb},
    {"ing", Pos::kVerb},
    {"ous", Pos::kAdj},
    {"ful", Pos::kAdj},
    {"less", Pos::kAdj},
    {"able", Pos::kAdj},
    {"ible", Pos::kAdj},
    {"ive", Pos::kAdj},
}};

struct Registry {
  std::mutex mu;
  std::unordered_map<std::string, TaggerHandle> taggers;
};

Registry& GetRegistry() {
  static Registry* registry = [] {
    auto* r = new Registry;
    r->taggers.emplace("rule", std::make_shared<RuleTagger>());
    return r;
  }();
  return *registry;
}

}  // namespace

RuleTagger::RuleTagger() {
  AddWords(closed_class_, kPronouns, Pos::kPron);
  AddWords(closed_class_, kPrepositions, Pos::kPrep);
  AddWords(closed_class_, kConjunctions, Pos::kConj);
  AddWords(closed_class_, kDeterminers, Pos::kDet);
  AddWords(closed_class_, kNumberWords, Pos::kNum);
  AddWords(closed_class_, kAuxiliaries, Pos::kVerb);
}

bool RuleTagger::SentenceInitial(const Document& doc, size_t index) const {
  if (doc.sentences.empty()) return index == 0;
  const SentenceRange& sentence = doc.sentences[doc.SentenceOf(index)];
  for (size_t i = sentence.begin; i < index; ++i) {
    const std::string_view s = doc.tokens[i].surface;
    for (size_t pos = 0; pos < s.size();) {
      const char32_t c = unicode::NextCodePoint(s, pos);
      if (!unicode::IsPunctuation(c) && !unicode::IsSymbol(c)) return false;
    }
  }
  return true;
}

Pos RuleTagger::TagAt(const Document& doc, size_t index) const {
  const std::string_view surface = doc.tokens.at(index).surface;
  bool all_punct = true;
  bool all_marks = true;
  for (size_t pos = 0; pos < surface.size();) {
    const char32_t c = unicode::NextCodePoint(surface, pos);
    const bool punct = unicode::IsPunctuation(c);
    all_punct &= punct;
    all_marks &= punct || unicode::IsSymbol(c);
  }
  if (surface.empty()) return Pos::kOther;
  if (all_punct) return Pos::kPunct;
  if (all_marks) return Pos::kSym;
  if (IsNumeric(surface) || IsChineseNumeral(surface)) return Pos::kNum;

  const std::string lower = unicode::ToLower(surface);
  if (const auto it = closed_class_.find(lower); it != closed_class_.end()) {
    return it->second;
  }
  if (StartsUpper(surface) && !SentenceInitial(doc, index)) return Pos::kPropn;
  for (const SuffixRule& rule : kSuffixRules) {
    if (EndsWith(lower, rule.suffix)) return rule.pos;
  }
  return Pos::kNoun;
}

TaggerHandle FindTagger(std::string_view name) {
  Registry& registry = GetRegistry();
  std::lock_guard<std::mutex> lock(registry.mu);
  const auto it = registry.taggers.find(std::string(name));
  if (it == registry.taggers.end()) {
    throw ConfigError("unknown tagger '" + std::string(name) + "'");
  }
  return it->second;
}

void RegisterTagger(std::string name, TaggerHandle tagger) {
  if (tagger == nullptr) throw InvalidArgumentError("null tagger");
  Registry& registry = GetRegistry();
  std::lock_guard<std::mutex> lock(registry.mu);
  registry.taggers[std::move(name)] = std::move(tagger);
}

}  // namespace synmark
