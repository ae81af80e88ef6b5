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

#ifndef SYNMARK_PROVIDERS_H_
#define SYNMARK_PROVIDERS_H_

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "synmark/config.h"
#include "synmark/lexicon.h"
#include "synmark/rpc_client.h"
#include "synmark/textmodel.h"

namespace synmark {

struct Candidate {
  std::string surface;  // already recased to the target token
  double s_global = 0;
  double s_context = 0;
  double s_word = 0;  // lambda * s_context + (1 - lambda) * s_global
  double s_sent = 0;
};

// `raw` holds at most k candidates ordered by descending s_word with ties
// broken by surface; `filtered` keeps the ones with s_sent >= tau_sent and
// s_word >= tau_word, in the same order.
struct CandidateSet {
  size_t token_index = 0;
  std::vector<Candidate> raw;
  std::vector<Candidate> filtered;
};

class SynonymProvider {
 public:
  virtual ~SynonymProvider() = default;

  // Scored candidates for doc.tokens[index]. Implementations return an
  // empty set for words they know nothing about and throw ProviderError when
  // they cannot answer.
  virtual CandidateSet Candidates(const Document& doc, size_t index,
                                  const ScoringParams& params) const = 0;
};

// Checks the eligibility precondition, calls cfg.provider and attaches the
// token to any ProviderError.
CandidateSet Candidates(const Document& doc, size_t index,
                        const WatermarkConfig& cfg);

double BlendWordScore(double lambda, double s_context, double s_global);

// Orders `scored`, keeps the top k and applies the thresholds.
CandidateSet FinalizeCandidates(size_t index, std::vector<Candidate> scored,
                                const ScoringParams& params);

// True when `surface` would survive tokenization as exactly one token of
// itself, so substituting it keeps token alignment.
bool IsSingleToken(std::string_view surface);

struct LexiconScores {
  double s_global = 0;
  double s_context = 0;
  double s_word = 0;
  double s_sent = 0;
};

// Scores replacing doc.tokens[index] (whose surface is `original`) with
// `candidate`:
//   s_global  cosine of the two word vectors
//   s_context cosine of the candidate vector with the mean vector of the
//             known words within `window` tokens on either side of the
//             target; equals s_global when no neighbour has a vector
//   s_sent    cosine of mean-of-vectors embeddings of the sentence before
//             and after substitution
// Throws InvalidArgumentError when either word lacks a vector.
LexiconScores ScoreWithLexicon(std::string_view original,
                               std::string_view candidate, const Document& doc,
                               size_t index, const Lexicon& lexicon,
                               double lambda, size_t window = 5);

class LexiconProvider : public SynonymProvider {
 public:
  explicit LexiconProvider(std::shared_ptr<const Lexicon> lexicon,
                           size_t window = 5);

  CandidateSet Candidates(const Document& doc, size_t index,
                          const ScoringParams& params) const override;

  const Lexicon& lexicon() const { return *lexicon_; }

 private:
  std::shared_ptr<const Lexicon> lexicon_;
  size_t window_;
};

// Wire records of the provider protocol.
struct ProviderRequest {
  int64_t id = 0;
  std::vector<std::string> tokens;
  size_t index = 0;
  int k = 32;
  double tau_sent = 0.8;
  double tau_word = 0.8;
  double lambda = 0.83;
  std::optional<uint64_t> seed;
};

struct RemoteCandidate {
  std::string surface;
  double s_context = 0;
  std::optional<double> s_global;
  double s_sent = 0;
};

struct ProviderResponse {
  int64_t id = 0;
  std::vector<RemoteCandidate> candidates;
};

nlohmann::json ToJson(const ProviderRequest& request);
ProviderRequest RequestFromJson(const nlohmann::json& record);
// Throws ProtocolError for records that do not match the response schema,
// including scores outside [-1, 1].
ProviderResponse ResponseFromJson(const nlohmann::json& record);
nlohmann::json ToJson(const ProviderResponse& response);

// Client for an out-of-process contextual provider. s_global is recomputed
// from `local_vectors` when both words are known there; otherwise the
// provider's value is used, and candidates with neither are dropped.
class RemoteProvider : public SynonymProvider {
 public:
  struct Options {
    std::chrono::milliseconds timeout{30000};
    std::optional<uint64_t> seed;
  };

  RemoteProvider(std::unique_ptr<LineChannel> channel,
                 std::shared_ptr<const Lexicon> local_vectors, Options options);

  CandidateSet Candidates(const Document& doc, size_t index,
                          const ScoringParams& params) const override;

  // One request/response exchange. The request id is assigned here and
  // checked against the response.
  ProviderResponse RemoteCandidates(ProviderRequest request) const;
  bool Ping() const;

  LineRpcClient& client() const { return *client_; }

 private:
  std::unique_ptr<LineRpcClient> client_;
  std::shared_ptr<const Lexicon> local_vectors_;
  Options options_;
};

}  // namespace synmark

#endif  // SYNMARK_PROVIDERS_H_
