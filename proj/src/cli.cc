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

#include "synmark/cli.h"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "synmark/attacks.h"
#include "synmark/config.h"
#include "synmark/corpus.h"
#include "synmark/detect.h"
#include "synmark/encoding.h"
#include "synmark/errors.h"
#include "synmark/eval.h"
#include "synmark/inject.h"
#include "synmark/lexicon.h"
#include "synmark/line_channel.h"
#include "synmark/parallel.h"
#include "synmark/providers.h"

namespace synmark {
namespace {

using json = nlohmann::ordered_json;

struct Runtime {
  FileConfig file;
  WatermarkConfig cfg;
  std::shared_ptr<const Lexicon> lexicon;
  std::string provider_kind;  // empty when none is configured
  size_t threads = 1;
};

Runtime BuildRuntime(const CliConfig& cli) {
  Runtime rt;
  if (!cli.config_path.empty()) rt.file = LoadFileConfig(cli.config_path);
  if (cli.remote_endpoint) rt.file.remote_endpoint = cli.remote_endpoint;
  if (cli.provider) rt.file.provider = cli.provider;
  rt.cfg = rt.file.watermark;
  if (cli.alpha) rt.cfg.alpha = *cli.alpha;
  rt.cfg.Validate();
  if (rt.file.lexicon_vectors.has_value() !=
      rt.file.lexicon_synonyms.has_value()) {
    throw ConfigError("[lexicon] needs both vectors and synonyms");
  }
  if (rt.file.lexicon_vectors) {
    rt.lexicon = std::make_shared<const Lexicon>(
        Lexicon::Load(*rt.file.lexicon_vectors, *rt.file.lexicon_synonyms));
  }
  if (rt.file.provider) {
    rt.provider_kind = *rt.file.provider;
  } else if (rt.lexicon) {
    rt.provider_kind = "lexicon";
  } else if (rt.file.remote_endpoint) {
    rt.provider_kind = "remote";
  }
  if (!rt.provider_kind.empty() && rt.provider_kind != "lexicon" &&
      rt.provider_kind != "remote") {
    throw ConfigError("unknown provider '" + rt.provider_kind + "'");
  }
  rt.threads = cli.threads == 0 ? DefaultThreads() : cli.threads;
  return rt;
}

void AttachProvider(Runtime& rt) {
  if (rt.provider_kind == "lexicon") {
    if (!rt.lexicon) throw ConfigError("lexicon provider needs [lexicon] paths");
    rt.cfg.provider = std::make_shared<const LexiconProvider>(rt.lexicon);
  } else if (rt.provider_kind == "remote") {
    if (!rt.file.remote_endpoint) {
      throw ConfigError("remote provider needs --remote-endpoint");
    }
    std::unique_ptr<LineChannel> channel;
    try {
      channel = OpenEndpoint(*rt.file.remote_endpoint);
    } catch (const Error& e) {
      throw ConfigError(std::string("cannot open remote endpoint: ") + e.what());
    }
    rt.cfg.provider = std::make_shared<const RemoteProvider>(
        std::move(channel), rt.lexicon,
        RemoteProvider::Options{rt.file.remote_timeout, rt.file.remote_seed});
  } else {
    throw ConfigError("this command needs a synonym provider");
  }
}

class Streams {
 public:
  Streams(const std::string& in_path, const std::string& out_path) {
    if (!in_path.empty() && in_path != "-") {
      in_file_.open(in_path);
      if (!in_file_) throw ConfigError("cannot open input " + in_path);
    }
    if (!out_path.empty() && out_path != "-") {
      out_file_.open(out_path);
      if (!out_file_) throw ConfigError("cannot open output " + out_path);
    }
  }
  std::istream& in() { return in_file_.is_open() ? in_file_ : std::cin; }
  std::ostream& out() { return out_file_.is_open() ? out_file_ : std::cout; }

 private:
  std::ifstream in_file_;
  std::ofstream out_file_;
};

json ErrorRecord(const std::string& id, const std::string& message) {
  return json{{"id", id}, {"error", message}};
}

using RecordFn = std::function<json(const CorpusRecord&)>;

// Applies `fn` to every record in parallel and writes the results in input
// order. Returns the number of error records written. ConfigError aborts.
size_t ProcessCorpus(std::istream& in, std::ostream& out, size_t threads,
                     const RecordFn& fn) {
  CorpusReader reader(in);
  size_t errors = 0;
  for (;;) {
    std::vector<CorpusRecord> batch = reader.NextBatch(threads * 16);
    if (batch.empty()) break;
    std::vector<json> results(batch.size());
    std::vector<char> failed(batch.size(), 0);
    ParallelFor(batch.size(), threads, [&](size_t i) {
      const CorpusRecord& record = batch[i];
      if (record.error) {
        results[i] = ErrorRecord(record.id, *record.error);
        failed[i] = 1;
        return;
      }
      try {
        results[i] = fn(record);
      } catch (const ConfigError&) {
        throw;
      } catch (const std::exception& e) {
        results[i] = ErrorRecord(record.id, e.what());
        failed[i] = 1;
      }
    });
    for (size_t i = 0; i < batch.size(); ++i) {
      WriteRecord(out, results[i]);
      errors += failed[i];
    }
  }
  out.flush();
  return errors;
}

std::string PickField(const CliConfig& cli, const CorpusRecord& record) {
  if (!cli.field.empty()) return RequireText(record, cli.field);
  for (const char* name : {"attacked", "watermarked", "text"}) {
    const auto it = record.fields.find(name);
    if (it != record.fields.end() && it->is_string()) return it->get<std::string>();
  }
  throw InvalidArgumentError("record has no text field");
}

DetectionMode ModeOf(const CliConfig& cli) {
  return cli.mode ? ParseMode(*cli.mode) : DetectionMode::kFast;
}

int Finish(size_t errors, std::ostream& diag) {
  if (errors == 0) return kExitOk;
  diag << errors << " document(s) failed\n";
  return kExitDocumentError;
}

int RunInject(const CliConfig& cli, std::ostream& diag) {
  Runtime rt = BuildRuntime(cli);
  AttachProvider(rt);
  const Analyzer analyzer = rt.cfg.MakeAnalyzer();
  Streams io(cli.input_path, cli.output_path);
  const size_t errors =
      ProcessCorpus(io.in(), io.out(), rt.threads, [&](const CorpusRecord& r) {
        const Document doc = analyzer.Analyze(RequireText(r, "text"));
        const InjectionReport report = Inject(doc, rt.cfg);
        json out = r.fields;
        out["watermarked"] = report.doc_out.text;
        out["replaced"] = report.replaced;
        out["visited"] = report.visited;
        return out;
      });
  return Finish(errors, diag);
}

json DetectionRecord(const std::string& id, const DetectionReport& report) {
  json out{{"id", id},
           {"mode", std::string(ModeName(report.mode))},
           {"N", report.n},
           {"ones", report.count_one},
           {"p_hat", report.p_hat},
           {"z", report.z},
           {"p_value", RoundSignificant(report.p_value, 4)},
           {"watermarked", report.watermarked}};
  if (report.trace) {
    json trace = json::array();
    for (const TraceEntry& e : *report.trace) {
      trace.push_back(json{{"index", e.token_index},
                           {"bit", e.bit},
                           {"in_scope", e.in_scope}});
    }
    out["trace"] = std::move(trace);
  }
  return out;
}

int RunDetect(const CliConfig& cli, std::ostream& diag) {
  Runtime rt = BuildRuntime(cli);
  const DetectionMode mode = ModeOf(cli);
  if (mode == DetectionMode::kPrecise) AttachProvider(rt);
  const Analyzer analyzer = rt.cfg.MakeAnalyzer();
  Streams io(cli.input_path, cli.output_path);
  const size_t errors =
      ProcessCorpus(io.in(), io.out(), rt.threads, [&](const CorpusRecord& r) {
        const Document doc = analyzer.Analyze(PickField(cli, r));
        return DetectionRecord(r.id, Detect(doc, rt.cfg, mode, cli.trace));
      });
  return Finish(errors, diag);
}

AttackSpec BaseAttackSpec(const CliConfig& cli, Runtime& rt) {
  if (!cli.attack_kind) throw ConfigError("attack needs --attack-kind");
  if (!cli.attack_p) throw ConfigError("attack needs --attack-p");
  AttackSpec spec;
  spec.kind = ParseAttackKind(*cli.attack_kind);
  spec.p = *cli.attack_p;
  spec.route = cli.route;
  if (spec.kind == AttackKind::kSynonym) AttachProvider(rt);
  if (spec.kind == AttackKind::kRetranslate || spec.kind == AttackKind::kPolish) {
    if (cli.transformer_tape) {
      spec.client = FixtureTapeTransformer::Load(*cli.transformer_tape);
    } else if (cli.transformer_endpoint) {
      try {
        spec.client = LineTransformerClient::Open(ExternalTransformerHandle{
            *cli.transformer_endpoint, cli.route, rt.file.remote_timeout});
      } catch (const Error& e) {
        throw ConfigError(std::string("cannot open transformer: ") + e.what());
      }
    }
  }
  spec.Validate();
  return spec;
}

int RunAttackCommand(const CliConfig& cli, std::ostream& diag) {
  Runtime rt = BuildRuntime(cli);
  const AttackSpec base = BaseAttackSpec(cli, rt);
  const Analyzer analyzer = rt.cfg.MakeAnalyzer();
  Streams io(cli.input_path, cli.output_path);
  const size_t errors =
      ProcessCorpus(io.in(), io.out(), rt.threads, [&](const CorpusRecord& r) {
        AttackSpec spec = base;
        spec.rng_seed = DeriveSeed(cli.seed, r.id);
        const Document doc = analyzer.Analyze(PickField(cli, r));
        const AttackResult result = RunAttack(doc, spec, rt.cfg);
        json out = r.fields;
        out["attacked"] = result.doc.text;
        out["attack"] = json{{"kind", std::string(AttackKindName(spec.kind))},
                             {"p", spec.p},
                             {"attempted", result.attempted},
                             {"changed", result.changed},
                             {"failures", result.log.size()}};
        return out;
      });
  return Finish(errors, diag);
}

std::string FormatParameter(const DetectionMode mode, double alpha) {
  std::ostringstream out;
  out << "mode=" << ModeName(mode) << ";alpha=" << alpha;
  return out.str();
}

int RunEval(const CliConfig& cli, std::ostream& diag) {
  Runtime rt = BuildRuntime(cli);
  const DetectionMode mode = ModeOf(cli);
  if (mode == DetectionMode::kPrecise) AttachProvider(rt);
  const Analyzer analyzer = rt.cfg.MakeAnalyzer();
  Streams io(cli.input_path, cli.output_path);

  struct Outcome {
    DetectionReport clean;
    DetectionReport marked;
    FidelityScores fidelity;
    size_t undecidable = 0;
    std::string error;
  };
  const auto detect_or_zero = [&](const Document& doc, size_t& undecidable) {
    try {
      return Detect(doc, rt.cfg, mode);
    } catch (const UndecidableError&) {
      ++undecidable;
      DetectionReport empty;
      empty.mode = mode;
      empty.alpha = rt.cfg.alpha;
      empty.z = 0;
      return empty;
    }
  };

  CorpusReader reader(io.in());
  std::vector<CorpusRecord> records = reader.NextBatch(SIZE_MAX);
  std::vector<Outcome> outcomes(records.size());
  ParallelFor(records.size(), rt.threads, [&](size_t i) {
    const CorpusRecord& r = records[i];
    Outcome& o = outcomes[i];
    if (r.error) {
      o.error = *r.error;
      return;
    }
    try {
      const Document clean = analyzer.Analyze(RequireText(r, "text"));
      const Document marked =
          analyzer.Analyze(cli.field.empty() ? PickField(cli, r)
                                             : RequireText(r, cli.field));
      o.clean = detect_or_zero(clean, o.undecidable);
      o.marked = detect_or_zero(marked, o.undecidable);
      o.fidelity.meteor_lite = MeteorLite(clean, marked);
      if (rt.lexicon) {
        o.fidelity.vec_similarity = VecSimilarity(*rt.lexicon, clean, marked);
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      o.error = e.what();
    }
  });

  std::vector<DetectionReport> pos, neg;
  std::vector<double> pos_z, neg_z;
  double meteor = 0, vec = 0;
  size_t errors = 0, undecidable = 0;
  for (size_t i = 0; i < outcomes.size(); ++i) {
    const Outcome& o = outcomes[i];
    if (!o.error.empty()) {
      diag << ErrorRecord(records[i].id, o.error).dump() << '\n';
      ++errors;
      continue;
    }
    pos.push_back(o.marked);
    neg.push_back(o.clean);
    pos_z.push_back(o.marked.z);
    neg_z.push_back(o.clean.z);
    meteor += o.fidelity.meteor_lite;
    vec += o.fidelity.vec_similarity;
    undecidable += o.undecidable;
  }
  if (pos.empty()) {
    diag << "no usable documents\n";
    return kExitDocumentError;
  }
  const RocResult roc = RocAuc(pos_z, neg_z);
  const F1Result f1 = F1AtAlpha(pos, neg, rt.cfg.alpha);
  const double docs = static_cast<double>(pos.size());
  double mean_pos = 0, mean_neg = 0;
  for (size_t i = 0; i < pos.size(); ++i) {
    mean_pos += pos_z[i] / docs;
    mean_neg += neg_z[i] / docs;
  }
  const std::string param = FormatParameter(mode, rt.cfg.alpha);
  std::vector<ResultRow> rows = {
      {"eval", param, "documents", docs},
      {"eval", param, "undecidable", static_cast<double>(undecidable)},
      {"eval", param, "auc", roc.auc},
      {"eval", param, "f1", f1.f1},
      {"eval", param, "precision", f1.precision},
      {"eval", param, "recall", f1.recall},
      {"eval", param, "mean_z_watermarked", mean_pos},
      {"eval", param, "mean_z_clean", mean_neg},
      {"eval", param, "meteor_lite", meteor / docs},
  };
  if (rt.lexicon) rows.push_back({"eval", param, "vec_similarity", vec / docs});
  WriteResultsCsv(io.out(), rows);
  io.out().flush();
  if (cli.roc_out) {
    std::ofstream roc_file(*cli.roc_out);
    if (!roc_file) throw ConfigError("cannot open " + *cli.roc_out);
    WriteRocCsv(roc_file, roc);
  }
  return Finish(errors, diag);
}

std::string DefaultRequestTape() {
  return (std::filesystem::path(DefaultGoldenBitsPath()).parent_path() /
          "provider_requests.jsonl")
      .string();
}

// Replays the request tape against the remote provider and checks each
// response against the protocol schema. Returns the number of failures.
size_t ReplayRequestTape(const RemoteProvider& provider, const std::string& path,
                         std::chrono::milliseconds timeout, std::ostream& out) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open request tape " + path);
  std::string line;
  size_t failures = 0;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const nlohmann::json request = nlohmann::json::parse(line, nullptr, false);
    if (request.is_discarded() || !request.is_object()) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": bad record");
    }
    const std::string op = request.value("op", "");
    const std::string label = "request " + request.value("id", nlohmann::json()).dump() +
                              " (" + op + ")";
    try {
      const nlohmann::json response = provider.client().CallRaw(request, timeout);
      if (op == "ping") {
        if (response.value("ok", false) != true) {
          throw ProtocolError("ping response lacks ok=true");
        }
      } else {
        const ProviderRequest parsed = RequestFromJson(request);
        const ProviderResponse first = ResponseFromJson(response);
        if (first.candidates.size() > static_cast<size_t>(parsed.k)) {
          throw ProtocolError("more than k candidates");
        }
        if (parsed.seed) {
          const ProviderResponse again =
              ResponseFromJson(provider.client().CallRaw(request, timeout));
          std::vector<std::string> a, b;
          for (const RemoteCandidate& c : first.candidates) a.push_back(c.surface);
          for (const RemoteCandidate& c : again.candidates) b.push_back(c.surface);
          if (a != b) throw ProtocolError("seeded request is not repeatable");
        }
      }
      out << label << ": ok\n";
    } catch (const Error& e) {
      out << label << ": FAIL " << e.what() << '\n';
      ++failures;
    }
  }
  return failures;
}

int RunConformance(const CliConfig& cli, std::ostream& diag) {
  Runtime rt = BuildRuntime(cli);
  const std::string fixture =
      cli.input_path.empty() ? DefaultGoldenBitsPath() : cli.input_path;
  Streams io("", cli.output_path);
  std::ostream& out = io.out();
  const ConformanceResult result = CheckGoldenBits(LoadGoldenBits(fixture));
  out << "golden bits: " << result.checked << " checked, "
      << result.mismatches.size() << " mismatched\n";
  for (const GoldenTriple& t : result.mismatches) {
    out << "  mismatch: " << t.prev << '\t' << t.cur << " expected " << t.bit
        << '\n';
  }
  size_t failures = result.checked == 0 ? 1 : result.mismatches.size();
  if (rt.file.remote_endpoint) {
    rt.provider_kind = "remote";
    AttachProvider(rt);
    const auto& remote = static_cast<const RemoteProvider&>(*rt.cfg.provider);
    failures += ReplayRequestTape(
        remote, cli.request_tape.value_or(DefaultRequestTape()),
        rt.file.remote_timeout, out);
  }
  out.flush();
  if (failures != 0) {
    diag << "conformance failed\n";
    return kExitDocumentError;
  }
  return kExitOk;
}

}  // namespace

int Run(const CliConfig& cli, std::ostream& diag) {
  try {
    if (cli.command == "inject") return RunInject(cli, diag);
    if (cli.command == "detect") return RunDetect(cli, diag);
    if (cli.command == "attack") return RunAttackCommand(cli, diag);
    if (cli.command == "eval") return RunEval(cli, diag);
    if (cli.command == "conformance") return RunConformance(cli, diag);
    throw ConfigError("unknown command '" + cli.command + "'");
  } catch (const ConfigError& e) {
    diag << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << '\n';
    return kExitDocumentError;
  }
}

int RunMain(int argc, char** argv) {
  CLI::App app{"Synonym-substitution text watermarking"};
  app.require_subcommand(1);
  CliConfig cli;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--in", cli.input_path, "Input corpus (JSON lines)");
    sub->add_option("--out", cli.output_path, "Output path");
    sub->add_option("--config", cli.config_path, "Config file");
    sub->add_option("--alpha", cli.alpha, "Significance level");
    sub->add_option("--provider", cli.provider, "lexicon or remote");
    sub->add_option("--remote-endpoint", cli.remote_endpoint,
                    "host:port or a command speaking the provider protocol");
    sub->add_option("--threads", cli.threads, "Worker threads (0 = all)");
  };
  const auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", cli.mode, "fast or precise");
    sub->add_option("--field", cli.field, "Record field holding the text");
  };

  CLI::App* inject = app.add_subcommand("inject", "Watermark a corpus");
  add_common(inject);

  CLI::App* detect = app.add_subcommand("detect", "Test documents for a mark");
  add_common(detect);
  add_mode(detect);
  detect->add_flag("--trace", cli.trace, "Emit per-token bits");

  CLI::App* attack = app.add_subcommand("attack", "Perturb watermarked text");
  add_common(attack);
  attack->add_option("--field", cli.field, "Record field holding the text");
  attack->add_option("--attack-kind", cli.attack_kind,
                     "delete, synonym, retranslate or polish");
  attack->add_option("--attack-p", cli.attack_p, "Attack probability");
  attack->add_option("--seed", cli.seed, "Base random seed");
  attack->add_option("--transformer-endpoint", cli.transformer_endpoint,
                     "External transformer for retranslate/polish");
  attack->add_option("--transformer-tape", cli.transformer_tape,
                     "Recorded transformer tape");
  attack->add_option("--route", cli.route, "Route or prompt for the transformer");

  CLI::App* eval = app.add_subcommand("eval", "AUC, F1 and fidelity");
  add_common(eval);
  add_mode(eval);
  eval->add_option("--roc-out", cli.roc_out, "Write the ROC curve here");

  CLI::App* conformance =
      app.add_subcommand("conformance", "Check the golden-bit fixture");
  add_common(conformance);
  conformance->add_option("--request-tape", cli.request_tape,
                          "Provider request tape to replay");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? kExitOk : kExitConfigError;
  }
  cli.command = app.get_subcommands().front()->get_name();
  return Run(cli, std::cerr);
}

}  // namespace synmark
