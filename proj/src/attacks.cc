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

#include "synmark/attacks.h"

#include <atomic>
#include <fstream>
#include <optional>
#include <thread>

#include "json.hpp"
#include "synmark/errors.h"
#include "synmark/providers.h"

namespace synmark {
namespace {

// Joins the kept tokens of `doc`, reusing the source whitespace.
std::string JoinKept(const Document& doc, const std::vector<bool>& keep) {
  if (doc.tokens.empty()) return doc.text;
  std::string out(doc.text, 0, doc.tokens.front().span.begin);
  std::string gap;
  bool any = false;
  size_t last_kept = 0;
  for (size_t i = 0; i < doc.tokens.size(); ++i) {
    const Token& t = doc.tokens[i];
    if (i > 0) {
      const size_t prev_end = doc.tokens[i - 1].span.end;
      gap.append(doc.text, prev_end, t.span.begin - prev_end);
    }
    if (!keep[i]) continue;
    if (any) {
      if (gap.empty() && last_kept + 1 != i) gap = " ";
      out.append(gap);
    }
    out.append(t.surface);
    gap.clear();
    any = true;
    last_kept = i;
  }
  out.append(doc.text, doc.tokens.back().span.end, std::string::npos);
  return out;
}

}  // namespace

std::string_view AttackKindName(AttackKind kind) {
  switch (kind) {
    case AttackKind::kDelete:
      return "delete";
    case AttackKind::kSynonym:
      return "synonym";
    case AttackKind::kRetranslate:
      return "retranslate";
    case AttackKind::kPolish:
      return "polish";
  }
  return "delete";
}

AttackKind ParseAttackKind(std::string_view name) {
  if (name == "delete") return AttackKind::kDelete;
  if (name == "synonym") return AttackKind::kSynonym;
  if (name == "retranslate") return AttackKind::kRetranslate;
  if (name == "polish") return AttackKind::kPolish;
  throw ConfigError("unknown attack kind '" + std::string(name) + "'");
}

void AttackSpec::Validate() const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ConfigError("attack probability must lie in [0, 1]");
  }
  if ((kind == AttackKind::kRetranslate || kind == AttackKind::kPolish) &&
      client == nullptr) {
    throw ConfigError(std::string(AttackKindName(kind)) +
                      " attack requires an external client");
  }
  if (max_in_flight == 0) throw ConfigError("max_in_flight must be positive");
}

LineTransformerClient::LineTransformerClient(
    std::unique_ptr<LineChannel> channel, std::chrono::milliseconds timeout)
    : client_(std::make_unique<LineRpcClient>(std::move(channel))),
      timeout_(timeout) {}

std::unique_ptr<LineTransformerClient> LineTransformerClient::Open(
    const ExternalTransformerHandle& handle) {
  if (handle.endpoint.empty()) throw ConfigError("empty transformer endpoint");
  return std::make_unique<LineTransformerClient>(OpenEndpoint(handle.endpoint),
                                                 handle.timeout);
}

std::string LineTransformerClient::Transform(const std::string& text,
                                             const std::string& route) const {
  const nlohmann::json reply = client_->Call(
      {{"op", "transform"}, {"text", text}, {"route", route}}, timeout_);
  const auto it = reply.find("text");
  if (it == reply.end() || !it->is_string()) {
    throw ProtocolError("transform response lacks a text field");
  }
  return it->get<std::string>();
}

std::unique_ptr<FixtureTapeTransformer> FixtureTapeTransformer::Load(
    const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open tape " + path);
  std::map<std::pair<std::string, std::string>, std::string> entries;
  std::optional<nlohmann::json> request;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object()) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": bad record");
    }
    if (!request) {
      if (!record.contains("text") || !record["text"].is_string()) {
        throw ConfigError(path + ":" + std::to_string(line_no) +
                          ": request lacks text");
      }
      request = std::move(record);
      continue;
    }
    if (record.value("id", int64_t{-1}) != request->value("id", int64_t{-1}) ||
        !record.contains("text") || !record["text"].is_string()) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": response does not match the preceding request");
    }
    entries[{(*request)["text"].get<std::string>(),
             request->value("route", std::string())}] =
        record["text"].get<std::string>();
    request.reset();
  }
  if (request) throw ConfigError(path + ": request without a response");
  return std::make_unique<FixtureTapeTransformer>(std::move(entries));
}

FixtureTapeTransformer::FixtureTapeTransformer(
    std::map<std::pair<std::string, std::string>, std::string> entries)
    : entries_(std::move(entries)) {}

std::string FixtureTapeTransformer::Transform(const std::string& text,
                                              const std::string& route) const {
  const auto it = entries_.find({text, route});
  if (it == entries_.end()) {
    throw ProviderError("no recorded response for request");
  }
  return it->second;
}

RecordingTransformer::RecordingTransformer(
    std::shared_ptr<const TextTransformer> inner, const std::string& tape_path)
    : inner_(std::move(inner)), tape_path_(tape_path) {
  if (inner_ == nullptr) throw InvalidArgumentError("null transformer");
}

std::string RecordingTransformer::Transform(const std::string& text,
                                            const std::string& route) const {
  std::string reply = inner_->Transform(text, route);
  std::lock_guard<std::mutex> lock(mu_);
  std::ofstream out(tape_path_, std::ios::app | std::ios::binary);
  const int64_t id = next_id_++;
  out << nlohmann::json{{"id", id}, {"op", "transform"}, {"text", text},
                        {"route", route}}
             .dump()
      << '\n'
      << nlohmann::json{{"id", id}, {"text", reply}}.dump() << '\n';
  return reply;
}

AttackResult AttackDelete(const Document& doc, const AttackSpec& spec) {
  spec.Validate();
  AttackRng rng(spec.rng_seed);
  std::vector<bool> keep(doc.tokens.size(), true);
  AttackResult result;
  for (size_t i = 0; i < doc.tokens.size(); ++i) {
    if (rng.Uniform() < spec.p) {
      keep[i] = false;
      ++result.attempted;
      ++result.changed;
    }
  }
  result.doc = result.changed == 0 ? doc : Tokenize(JoinKept(doc, keep));
  return result;
}

AttackResult AttackSynonym(const Document& doc, const AttackSpec& spec,
                           const WatermarkConfig& cfg) {
  spec.Validate();
  AttackRng rng(spec.rng_seed);
  AttackResult result;
  Document work = doc;
  for (size_t i = 1; i < work.tokens.size(); ++i) {
    if (!work.tokens[i].eligible) continue;
    if (!(rng.Uniform() < spec.p)) continue;
    ++result.attempted;
    const CandidateSet set = Candidates(work, i, cfg);
    if (set.filtered.empty()) continue;
    work.tokens[i].surface = set.filtered.front().surface;
    work.tokens[i].casing = DetectCasing(work.tokens[i].surface);
    ++result.changed;
  }
  result.doc =
      result.changed == 0 ? doc : Tokenize(WithSurfaces(doc, work.Surfaces()).text);
  return result;
}

AttackResult AttackExternal(const Document& doc, const AttackSpec& spec) {
  spec.Validate();
  if (spec.kind != AttackKind::kRetranslate && spec.kind != AttackKind::kPolish) {
    throw InvalidArgumentError("external attack needs kind retranslate or polish");
  }
  AttackRng rng(spec.rng_seed);
  std::vector<size_t> selected;
  for (size_t s = 0; s < doc.sentences.size(); ++s) {
    if (rng.Uniform() < spec.p) selected.push_back(s);
  }
  AttackResult result;
  result.attempted = selected.size();
  if (selected.empty()) {
    result.doc = doc;
    return result;
  }

  const auto slice = [&doc](size_t s) {
    const SentenceRange& range = doc.sentences[s];
    const size_t begin = doc.tokens[range.begin].span.begin;
    const size_t end = doc.tokens[range.end - 1].span.end;
    return std::pair<size_t, size_t>(begin, end);
  };

  std::vector<std::optional<std::string>> replies(selected.size());
  std::vector<std::string> errors(selected.size());
  std::atomic<size_t> next{0};
  const auto worker = [&] {
    for (size_t job = next.fetch_add(1); job < selected.size();
         job = next.fetch_add(1)) {
      const auto [begin, end] = slice(selected[job]);
      try {
        replies[job] =
            spec.client->Transform(doc.text.substr(begin, end - begin), spec.route);
      } catch (const std::exception& e) {
        errors[job] = e.what();
      }
    }
  };
  const size_t threads = std::min(spec.max_in_flight, selected.size());
  std::vector<std::thread> pool;
  for (size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  std::string text;
  size_t prev_end = 0;
  for (size_t job = 0; job < selected.size(); ++job) {
    const auto [begin, end] = slice(selected[job]);
    if (!replies[job]) {
      result.log.push_back({selected[job], errors[job]});
      continue;
    }
    text.append(doc.text, prev_end, begin - prev_end);
    text.append(*replies[job]);
    prev_end = end;
    ++result.changed;
  }
  text.append(doc.text, prev_end, std::string::npos);
  if (result.changed == 0) {
    throw AttackAbortedError("external client failed on every sentence: " +
                             result.log.front().error);
  }
  result.doc = Tokenize(text);
  return result;
}

AttackResult RunAttack(const Document& doc, const AttackSpec& spec,
                       const WatermarkConfig& cfg) {
  switch (spec.kind) {
    case AttackKind::kDelete:
      return AttackDelete(doc, spec);
    case AttackKind::kSynonym:
      return AttackSynonym(doc, spec, cfg);
    case AttackKind::kRetranslate:
    case AttackKind::kPolish:
      return AttackExternal(doc, spec);
  }
  return AttackDelete(doc, spec);
}

}  // namespace synmark
