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

#include "synmark/providers.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "synmark/errors.h"
#include "synmark/unicode.h"

namespace synmark {
namespace {

double RequireScore(const nlohmann::json& candidate, const char* key) {
  const auto it = candidate.find(key);
  if (it == candidate.end() || !it->is_number()) {
    throw ProtocolError(std::string("candidate lacks numeric '") + key + "'");
  }
  const double v = it->get<double>();
  if (!std::isfinite(v) || v < -1.0 || v > 1.0) {
    throw ProtocolError(std::string("candidate score '") + key +
                        "' outside [-1, 1]");
  }
  return v;
}

}  // namespace

double BlendWordScore(double lambda, double s_context, double s_global) {
  return s_global + lambda * (s_context - s_global);
}

CandidateSet FinalizeCandidates(size_t index, std::vector<Candidate> scored,
                                const ScoringParams& params) {
  std::sort(scored.begin(), scored.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.s_word != b.s_word) return a.s_word > b.s_word;
              return a.surface < b.surface;
            });
  if (scored.size() > static_cast<size_t>(std::max(params.k, 0))) {
    scored.resize(static_cast<size_t>(std::max(params.k, 0)));
  }
  CandidateSet set;
  set.token_index = index;
  for (const Candidate& c : scored) {
    if (c.s_sent >= params.tau_sent && c.s_word >= params.tau_word) {
      set.filtered.push_back(c);
    }
  }
  set.raw = std::move(scored);
  return set;
}

bool IsSingleToken(std::string_view surface) {
  if (surface.empty() || !unicode::IsValidUtf8(surface)) return false;
  const Document doc = Tokenize(surface);
  return doc.tokens.size() == 1 && doc.tokens[0].surface == doc.text;
}

CandidateSet Candidates(const Document& doc, size_t index,
                        const WatermarkConfig& cfg) {
  if (index >= doc.tokens.size()) {
    throw InvalidArgumentError("token index " + std::to_string(index) +
                               " past end of document");
  }
  const Token& token = doc.tokens[index];
  if (!token.eligible) {
    throw InvalidArgumentError(
        WithTokenContext("candidates requested for an ineligible token", index,
                         token.surface));
  }
  if (cfg.provider == nullptr) throw ConfigError("no synonym provider configured");
  try {
    return cfg.provider->Candidates(doc, index, cfg.scoring());
  } catch (const ProtocolError& e) {
    throw ProtocolError(WithTokenContext(e.what(), index, token.surface));
  } catch (const ProviderError& e) {
    throw ProviderError(WithTokenContext(e.what(), index, token.surface));
  }
}

LexiconScores ScoreWithLexicon(std::string_view original,
                               std::string_view candidate, const Document& doc,
                               size_t index, const Lexicon& lexicon,
                               double lambda, size_t window) {
  const std::vector<float>* vo = lexicon.Vector(original);
  const std::vector<float>* vc = lexicon.Vector(candidate);
  if (vo == nullptr || vc == nullptr) {
    throw InvalidArgumentError("no vector for '" +
                               std::string(vo == nullptr ? original : candidate) +
                               "'");
  }
  LexiconScores scores;
  scores.s_global = Cosine(*vo, *vc);

  std::vector<std::string> context;
  const size_t lo = index >= window ? index - window : 0;
  const size_t hi = std::min(doc.tokens.size(), index + window + 1);
  for (size_t i = lo; i < hi; ++i) {
    if (i != index) context.push_back(doc.tokens[i].surface);
  }
  const std::vector<double> context_mean = MeanVector(lexicon, context);
  if (context_mean.empty()) {
    scores.s_context = scores.s_global;
  } else {
    const std::vector<double> cand(vc->begin(), vc->end());
    scores.s_context = Cosine(std::span<const double>(cand),
                              std::span<const double>(context_mean));
  }
  scores.s_word = BlendWordScore(lambda, scores.s_context, scores.s_global);

  const SentenceRange& sentence = doc.sentences.at(doc.SentenceOf(index));
  std::vector<std::string> before;
  for (size_t i = sentence.begin; i < sentence.end; ++i) {
    before.push_back(doc.tokens[i].surface);
  }
  std::vector<std::string> after = before;
  before[index - sentence.begin] = std::string(original);
  after[index - sentence.begin] = std::string(candidate);
  scores.s_sent = MeanVectorSimilarity(lexicon, before, after);
  return scores;
}

LexiconProvider::LexiconProvider(std::shared_ptr<const Lexicon> lexicon,
                                 size_t window)
    : lexicon_(std::move(lexicon)), window_(window) {
  if (lexicon_ == nullptr) throw InvalidArgumentError("null lexicon");
}

CandidateSet LexiconProvider::Candidates(const Document& doc, size_t index,
                                         const ScoringParams& params) const {
  const Token& token = doc.tokens.at(index);
  const std::vector<std::string>* synonyms = lexicon_->Synonyms(token.surface);
  std::vector<Candidate> scored;
  if (synonyms != nullptr && lexicon_->Vector(token.surface) != nullptr) {
    std::set<std::string> seen;
    for (const std::string& synonym : *synonyms) {
      if (!IsSingleToken(synonym)) continue;
      std::string surface = Recase(token, synonym);
      if (surface == token.surface || !seen.insert(surface).second) continue;
      if (lexicon_->Vector(surface) == nullptr) continue;
      const LexiconScores s = ScoreWithLexicon(token.surface, surface, doc,
                                               index, *lexicon_, params.lambda,
                                               window_);
      scored.push_back(
          {std::move(surface), s.s_global, s.s_context, s.s_word, s.s_sent});
    }
  }
  return FinalizeCandidates(index, std::move(scored), params);
}

nlohmann::json ToJson(const ProviderRequest& request) {
  nlohmann::json j = {{"id", request.id},
                      {"op", "candidates"},
                      {"tokens", request.tokens},
                      {"index", request.index},
                      {"k", request.k},
                      {"tau_sent", request.tau_sent},
                      {"tau_word", request.tau_word},
                      {"lambda", request.lambda}};
  if (request.seed) j["seed"] = *request.seed;
  return j;
}

ProviderRequest RequestFromJson(const nlohmann::json& record) {
  try {
    ProviderRequest r;
    r.id = record.at("id").get<int64_t>();
    if (record.at("op").get<std::string>() != "candidates") {
      throw ProtocolError("not a candidates request");
    }
    r.tokens = record.at("tokens").get<std::vector<std::string>>();
    r.index = record.at("index").get<size_t>();
    r.k = record.at("k").get<int>();
    r.tau_sent = record.at("tau_sent").get<double>();
    r.tau_word = record.at("tau_word").get<double>();
    r.lambda = record.at("lambda").get<double>();
    if (record.contains("seed")) r.seed = record["seed"].get<uint64_t>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("bad candidates request: ") + e.what());
  }
}

ProviderResponse ResponseFromJson(const nlohmann::json& record) {
  if (!record.is_object() || !record.contains("id") ||
      !record["id"].is_number_integer()) {
    throw ProtocolError("response lacks an integer id");
  }
  const auto it = record.find("candidates");
  if (it == record.end() || !it->is_array()) {
    throw ProtocolError("response lacks a candidates array");
  }
  ProviderResponse response;
  response.id = record["id"].get<int64_t>();
  for (const nlohmann::json& c : *it) {
    if (!c.is_object() || !c.contains("surface") || !c["surface"].is_string()) {
      throw ProtocolError("candidate lacks a string surface");
    }
    RemoteCandidate rc;
    rc.surface = c["surface"].get<std::string>();
    rc.s_context = RequireScore(c, "s_context");
    rc.s_sent = RequireScore(c, "s_sent");
    if (c.contains("s_global") && !c["s_global"].is_null()) {
      rc.s_global = RequireScore(c, "s_global");
    }
    response.candidates.push_back(std::move(rc));
  }
  return response;
}

nlohmann::json ToJson(const ProviderResponse& response) {
  nlohmann::json candidates = nlohmann::json::array();
  for (const RemoteCandidate& c : response.candidates) {
    nlohmann::json j = {{"surface", c.surface},
                        {"s_context", c.s_context},
                        {"s_sent", c.s_sent}};
    if (c.s_global) j["s_global"] = *c.s_global;
    candidates.push_back(std::move(j));
  }
  return {{"id", response.id}, {"candidates", std::move(candidates)}};
}

RemoteProvider::RemoteProvider(std::unique_ptr<LineChannel> channel,
                               std::shared_ptr<const Lexicon> local_vectors,
                               Options options)
    : client_(std::make_unique<LineRpcClient>(std::move(channel))),
      local_vectors_(std::move(local_vectors)),
      options_(options) {}

ProviderResponse RemoteProvider::RemoteCandidates(ProviderRequest request) const {
  nlohmann::json record = ToJson(request);
  record.erase("id");
  const nlohmann::json reply = client_->Call(std::move(record), options_.timeout);
  return ResponseFromJson(reply);
}

bool RemoteProvider::Ping() const {
  const nlohmann::json reply =
      client_->Call({{"op", "ping"}}, options_.timeout);
  const auto it = reply.find("ok");
  return it != reply.end() && it->is_boolean() && it->get<bool>();
}

CandidateSet RemoteProvider::Candidates(const Document& doc, size_t index,
                                        const ScoringParams& params) const {
  const Token& token = doc.tokens.at(index);
  ProviderRequest request;
  request.tokens = doc.Surfaces();
  request.index = index;
  request.k = params.k;
  request.tau_sent = params.tau_sent;
  request.tau_word = params.tau_word;
  request.lambda = params.lambda;
  request.seed = options_.seed;
  const ProviderResponse response = RemoteCandidates(std::move(request));

  std::vector<Candidate> scored;
  std::set<std::string> seen;
  for (const RemoteCandidate& rc : response.candidates) {
    if (!IsSingleToken(rc.surface)) continue;
    std::string surface = Recase(token, rc.surface);
    if (surface == token.surface || !seen.insert(surface).second) continue;
    std::optional<double> s_global;
    if (local_vectors_ != nullptr) {
      const auto* vo = local_vectors_->Vector(token.surface);
      const auto* vc = local_vectors_->Vector(surface);
      if (vo != nullptr && vc != nullptr) s_global = Cosine(*vo, *vc);
    }
    if (!s_global) s_global = rc.s_global;
    if (!s_global) continue;
    Candidate c;
    c.surface = std::move(surface);
    c.s_global = *s_global;
    c.s_context = rc.s_context;
    c.s_word = BlendWordScore(params.lambda, c.s_context, c.s_global);
    c.s_sent = rc.s_sent;
    scored.push_back(std::move(c));
  }
  return FinalizeCandidates(index, std::move(scored), params);
}

}  // namespace synmark
