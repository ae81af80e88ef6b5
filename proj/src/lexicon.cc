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

#include "synmark/lexicon.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "synmark/errors.h"
#include "synmark/unicode.h"

namespace synmark {
namespace {

std::string FoldKey(std::string_view word) {
  if (std::all_of(word.begin(), word.end(),
                  [](char c) { return static_cast<unsigned char>(c) < 0x80; })) {
    std::string out(word);
    for (char& c : out) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
  }
  return unicode::ToLower(unicode::Nfc(word));
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' ||
                                 line[pos] == '\r')) {
      ++pos;
    }
    size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' &&
           line[end] != '\r') {
      ++end;
    }
    if (end > pos) fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

bool IsInteger(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

template <typename T>
double CosineImpl(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) {
    throw InvalidArgumentError("cosine of vectors with different dimensions");
  }
  double dot = 0, na = 0, nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  const double c = dot / std::sqrt(na * nb);
  return std::clamp(c, -1.0, 1.0);
}

}  // namespace

Lexicon::Lexicon(SynonymMap synonyms, VectorMap vectors) {
  for (auto& [word, vec] : vectors) {
    if (dimension_ == 0) dimension_ = vec.size();
    if (vec.size() != dimension_ || vec.empty()) {
      throw InvalidArgumentError("vector for '" + word +
                                 "' has the wrong dimension");
    }
    vectors_.emplace(FoldKey(word), std::move(vec));
  }
  for (auto& [word, list] : synonyms) {
    std::string key = FoldKey(word);
    if (!vectors_.contains(key)) {
      throw InvalidArgumentError("synonym headword '" + word +
                                 "' has no vector");
    }
    std::vector<std::string>& dest = synonyms_[key];
    for (std::string& s : list) dest.push_back(unicode::Nfc(s));
  }
}

Lexicon Lexicon::Load(const std::string& vectors_path,
                      const std::string& synonyms_path) {
  VectorMap vectors;
  {
    std::ifstream in(vectors_path, std::ios::binary);
    if (!in) throw ConfigError("cannot open vectors file " + vectors_path);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto fields = SplitFields(line);
      if (fields.empty()) continue;
      if (line_no == 1 && fields.size() == 2 && IsInteger(fields[0]) &&
          IsInteger(fields[1])) {
        continue;
      }
      if (fields.size() < 2) {
        throw ConfigError(vectors_path + ":" + std::to_string(line_no) +
                          ": expected a word followed by numbers");
      }
      std::vector<float> vec;
      vec.reserve(fields.size() - 1);
      for (size_t i = 1; i < fields.size(); ++i) {
        float v = 0;
        const auto [ptr, ec] = std::from_chars(
            fields[i].data(), fields[i].data() + fields[i].size(), v);
        if (ec != std::errc() || ptr != fields[i].data() + fields[i].size()) {
          throw ConfigError(vectors_path + ":" + std::to_string(line_no) +
                            ": bad number '" + std::string(fields[i]) + "'");
        }
        vec.push_back(v);
      }
      vectors[FoldKey(fields[0])] = std::move(vec);
    }
  }
  SynonymMap synonyms;
  size_t dropped = 0;
  {
    std::ifstream in(synonyms_path, std::ios::binary);
    if (!in) throw ConfigError("cannot open synonyms file " + synonyms_path);
    std::string line;
    while (std::getline(in, line)) {
      const auto fields = SplitFields(line);
      if (fields.empty() || fields[0].front() == '#') continue;
      std::string key = FoldKey(fields[0]);
      if (!vectors.contains(key)) {
        ++dropped;
        continue;
      }
      auto& list = synonyms[key];
      for (size_t i = 1; i < fields.size(); ++i) list.emplace_back(fields[i]);
    }
  }
  Lexicon lexicon;
  try {
    lexicon = Lexicon(std::move(synonyms), std::move(vectors));
  } catch (const InvalidArgumentError& e) {
    throw ConfigError(vectors_path + ": " + e.what());
  }
  lexicon.dropped_keys_ = dropped;
  return lexicon;
}

const std::vector<float>* Lexicon::Vector(std::string_view word) const {
  const auto it = vectors_.find(FoldKey(word));
  return it == vectors_.end() ? nullptr : &it->second;
}

const std::vector<std::string>* Lexicon::Synonyms(std::string_view word) const {
  const auto it = synonyms_.find(FoldKey(word));
  return it == synonyms_.end() ? nullptr : &it->second;
}

double Cosine(std::span<const float> a, std::span<const float> b) {
  return CosineImpl(a, b);
}

double Cosine(std::span<const double> a, std::span<const double> b) {
  return CosineImpl(a, b);
}

std::vector<double> MeanVector(const Lexicon& lexicon,
                               std::span<const std::string> words) {
  std::vector<double> mean;
  size_t count = 0;
  for (const std::string& w : words) {
    const std::vector<float>* v = lexicon.Vector(w);
    if (v == nullptr) continue;
    if (mean.empty()) mean.assign(v->size(), 0.0);
    for (size_t i = 0; i < v->size(); ++i) mean[i] += (*v)[i];
    ++count;
  }
  for (double& x : mean) x /= static_cast<double>(count);
  return mean;
}

double MeanVectorSimilarity(const Lexicon& lexicon,
                            std::span<const std::string> a,
                            std::span<const std::string> b) {
  const std::vector<double> ma = MeanVector(lexicon, a);
  const std::vector<double> mb = MeanVector(lexicon, b);
  if (ma.empty() || mb.empty()) return 0.0;
  return Cosine(std::span<const double>(ma), std::span<const double>(mb));
}

}  // namespace synmark
