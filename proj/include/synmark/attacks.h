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

#ifndef SYNMARK_ATTACKS_H_
#define SYNMARK_ATTACKS_H_

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "synmark/config.h"
#include "synmark/rpc_client.h"
#include "synmark/textmodel.h"

namespace synmark {

// Rewrites one sentence: a translator round trip, an LLM polish, or a
// recorded stand-in for either. Throws on failure.
class TextTransformer {
 public:
  virtual ~TextTransformer() = default;
  virtual std::string Transform(const std::string& text,
                                const std::string& route) const = 0;
};

// Describes an external transformer endpoint.
struct ExternalTransformerHandle {
  std::string endpoint;         // see OpenEndpoint()
  std::string prompt_or_route;  // e.g. "en>zh>en" or a polishing prompt
  std::chrono::milliseconds timeout{30000};
};

// Speaks {"id","op":"transform","text","route"} -> {"id","text"} over a
// line channel.
class LineTransformerClient : public TextTransformer {
 public:
  LineTransformerClient(std::unique_ptr<LineChannel> channel,
                        std::chrono::milliseconds timeout);
  static std::unique_ptr<LineTransformerClient> Open(
      const ExternalTransformerHandle& handle);

  std::string Transform(const std::string& text,
                        const std::string& route) const override;

 private:
  std::unique_ptr<LineRpcClient> client_;
  std::chrono::milliseconds timeout_;
};

// Replays a tape of alternating request and response records. Requests are
// matched on (text, route); unmatched requests throw ProviderError.
class FixtureTapeTransformer : public TextTransformer {
 public:
  static std::unique_ptr<FixtureTapeTransformer> Load(const std::string& path);
  explicit FixtureTapeTransformer(
      std::map<std::pair<std::string, std::string>, std::string> entries);

  std::string Transform(const std::string& text,
                        const std::string& route) const override;
  size_t size() const { return entries_.size(); }

 private:
  std::map<std::pair<std::string, std::string>, std::string> entries_;
};

// Forwards to `inner` and appends every exchange to a tape file in the
// format FixtureTapeTransformer reads.
class RecordingTransformer : public TextTransformer {
 public:
  RecordingTransformer(std::shared_ptr<const TextTransformer> inner,
                       const std::string& tape_path);

  std::string Transform(const std::string& text,
                        const std::string& route) const override;

 private:
  std::shared_ptr<const TextTransformer> inner_;
  std::string tape_path_;
  mutable std::mutex mu_;
  mutable int64_t next_id_ = 1;
};

enum class AttackKind { kDelete, kSynonym, kRetranslate, kPolish };

std::string_view AttackKindName(AttackKind kind);
AttackKind ParseAttackKind(std::string_view name);  // ConfigError if unknown

struct AttackSpec {
  AttackKind kind = AttackKind::kDelete;
  double p = 0;
  uint64_t rng_seed = 0;
  std::shared_ptr<const TextTransformer> client;  // retranslate / polish
  std::string route;                              // passed to the client
  size_t max_in_flight = 4;

  // Throws ConfigError when p is outside [0, 1] or a required client is
  // missing.
  void Validate() const;
};

struct AttackLogEntry {
  size_t sentence_index = 0;
  std::string error;
};

struct AttackResult {
  Document doc;
  size_t attempted = 0;  // units (tokens or sentences) selected for attack
  size_t changed = 0;
  std::vector<AttackLogEntry> log;
};

// Uniform doubles in [0, 1) built from the top 53 bits of mt19937_64, so the
// stream is identical across standard libraries (unlike
// std::uniform_real_distribution).
class AttackRng {
 public:
  explicit AttackRng(uint64_t seed) : engine_(seed) {}
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

// Each token, punctuation included, is removed independently with
// probability p. Survivors keep the whitespace that separated them in the
// source; a single space is inserted where a removal would otherwise fuse
// two tokens. The result is re-tokenized (untagged).
AttackResult AttackDelete(const Document& doc, const AttackSpec& spec);

// Each eligible token is, with probability p, replaced by the top filtered
// candidate of cfg.provider, ignoring its bit. Returns the re-tokenized
// (untagged) text.
AttackResult AttackSynonym(const Document& doc, const AttackSpec& spec,
                           const WatermarkConfig& cfg);

// Each sentence is, with probability p, sent through spec.client and the
// reply spliced in place. Failed calls leave the sentence unchanged and are
// logged; if every attempted call fails the attack throws
// AttackAbortedError. Requests run concurrently, at most
// spec.max_in_flight at a time.
AttackResult AttackExternal(const Document& doc, const AttackSpec& spec);

// Dispatches on spec.kind.
AttackResult RunAttack(const Document& doc, const AttackSpec& spec,
                       const WatermarkConfig& cfg);

}  // namespace synmark

#endif  // SYNMARK_ATTACKS_H_
