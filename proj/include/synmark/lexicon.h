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

#ifndef SYNMARK_LEXICON_H_
#define SYNMARK_LEXICON_H_

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace synmark {

// Synonym lists plus dense word vectors. Keys are NFC, lower-cased; lookups
// fold case the same way.
class Lexicon {
 public:
  using SynonymMap = std::unordered_map<std::string, std::vector<std::string>>;
  using VectorMap = std::unordered_map<std::string, std::vector<float>>;

  Lexicon() = default;
  // Throws InvalidArgumentError if a synonym key has no vector or the
  // vectors disagree on dimension.
  Lexicon(SynonymMap synonyms, VectorMap vectors);

  // `vectors_path`: one word per line followed by d decimals (GloVe text
  // format; a word2vec "count dim" header line is skipped).
  // `synonyms_path`: a headword followed by its synonyms, whitespace
  // separated, one headword per line. Headwords without a vector are
  // dropped and counted in dropped_keys().
  static Lexicon Load(const std::string& vectors_path,
                      const std::string& synonyms_path);

  // Null when the word is unknown.
  const std::vector<float>* Vector(std::string_view word) const;
  const std::vector<std::string>* Synonyms(std::string_view word) const;

  size_t dimension() const { return dimension_; }
  size_t vocabulary_size() const { return vectors_.size(); }
  size_t dropped_keys() const { return dropped_keys_; }

 private:
  SynonymMap synonyms_;
  VectorMap vectors_;
  size_t dimension_ = 0;
  size_t dropped_keys_ = 0;
};

// Cosine similarity; 0 when either vector has zero norm.
double Cosine(std::span<const float> a, std::span<const float> b);
double Cosine(std::span<const double> a, std::span<const double> b);

// Mean of the vectors of `words` known to `lexicon`. Empty when none are
// known.
std::vector<double> MeanVector(const Lexicon& lexicon,
                               std::span<const std::string> words);

// Cosine between the mean-of-vectors embeddings of two token sequences;
// 0 when either side has no known word.
double MeanVectorSimilarity(const Lexicon& lexicon,
                            std::span<const std::string> a,
                            std::span<const std::string> b);

}  // namespace synmark

#endif  // SYNMARK_LEXICON_H_
